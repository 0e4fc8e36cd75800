import { readFileSync } from "node:fs";

/** Raw fixture bytes captured from the running fiber service. */
export function fixtureText(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");
}

export function fixtureJson(name: string): unknown {
  return JSON.parse(fixtureText(name));
}

export interface RecordedFetch {
  fetchFn: typeof fetch;
  /** URLs in request order. */
  calls: string[];
  /** Abort signals in request order, for cancellation assertions. */
  signals: (AbortSignal | undefined)[];
}

/**
 * fetch stub serving canned bodies by exact URL.  Unknown URLs get a 404.
 * A body of "HANG" never resolves but honors its abort signal, emulating a
 * slow request that gets superseded.
 */
export function makeFetch(routes: Record<string, string>): RecordedFetch {
  const calls: string[] = [];
  const signals: (AbortSignal | undefined)[] = [];
  const fetchFn = ((input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    calls.push(url);
    signals.push(init?.signal ?? undefined);
    const body = routes[url];
    if (body === "HANG") {
      return new Promise<Response>((_, reject) => {
        const signal = init?.signal;
        if (signal?.aborted) {
          reject(new DOMException("The operation was aborted.", "AbortError"));
          return;
        }
        signal?.addEventListener("abort", () => {
          reject(new DOMException("The operation was aborted.", "AbortError"));
        });
      });
    }
    if (body === undefined) {
      return Promise.resolve(
        new Response(JSON.stringify({ detail: "not found" }), { status: 404 }),
      );
    }
    return Promise.resolve(
      new Response(body, {
        status: 200,
        headers: { "content-type": "application/json" },
      }),
    );
  }) as typeof fetch;
  return { fetchFn, calls, signals };
}
