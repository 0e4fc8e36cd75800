/**
 * HTTP client for the fiber service and a fetch coordinator that cancels
 * in-flight work when superseded by a newer state (e.g. a drag produced a
 * fresher base position before the previous responses arrived).
 */

import { parseScene, type SceneJson } from "./types.js";

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number | null = null,
  ) {
    super(message);
  }
}

export class ServiceClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  async fetchScene(path: string, signal?: AbortSignal): Promise<SceneJson> {
    let res: Response;
    try {
      res = await this.fetchFn(`${this.baseUrl}${path}`, { signal });
    } catch (err) {
      if (err instanceof Error && err.name === "AbortError") {
        throw err;
      }
      throw new ServiceError(`service unreachable: ${String(err)}`);
    }
    if (!res.ok) {
      let detail = "";
      try {
        detail = await res.text();
      } catch {
        // response body unavailable; report the status alone
      }
      throw new ServiceError(
        `GET ${path} failed with ${res.status}${detail ? `: ${detail}` : ""}`,
        res.status,
      );
    }
    return parseScene(await res.json());
  }
}

export type SceneMap = Map<string, SceneJson>;

/**
 * Fetches the scene documents for a request set, aborting any previous
 * round that has not finished.  A superseded round resolves to null so the
 * caller simply skips rendering it.  Responses are cached by path; repeat
 * requests (the base sphere, re-selected variants) are free.
 */
export class SceneFetcher {
  private controller: AbortController | null = null;
  private readonly cache: SceneMap = new Map();

  constructor(
    private readonly client: ServiceClient,
    private readonly cacheLimit = 512,
  ) {}

  async refresh(paths: string[]): Promise<SceneMap | null> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;

    const missing = [...new Set(paths)].filter((p) => !this.cache.has(p));
    let fetched: SceneJson[];
    try {
      fetched = await Promise.all(
        missing.map((p) => this.client.fetchScene(p, controller.signal)),
      );
    } catch (err) {
      if (controller.signal.aborted) {
        return null;
      }
      throw err;
    }
    if (controller.signal.aborted) {
      return null;
    }
    missing.forEach((p, i) => this.cache.set(p, fetched[i]!));
    this.trimCache();
    const result: SceneMap = new Map();
    for (const p of paths) {
      result.set(p, this.cache.get(p)!);
    }
    return result;
  }

  /** Drop oldest entries once the cache outgrows its bound. */
  private trimCache(): void {
    while (this.cache.size > this.cacheLimit) {
      const oldest = this.cache.keys().next().value;
      if (oldest === undefined) {
        break;
      }
      this.cache.delete(oldest);
    }
  }
}
