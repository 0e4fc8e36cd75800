/**
 * Deployment configuration: a single JSON file next to the static bundle
 * naming the fiber service base URL.
 */

export interface ExplorerConfig {
  serviceUrl: string;
}

export const DEFAULT_CONFIG: ExplorerConfig = {
  serviceUrl: "http://127.0.0.1:8787",
};

function sanitize(url: string): string {
  return url.replace(/\/+$/, "");
}

/**
 * Load ./config.json relative to the page.  A missing or malformed file
 * falls back to the default local service address.
 */
export async function loadConfig(
  fetchFn: typeof fetch = fetch,
): Promise<ExplorerConfig> {
  try {
    const res = await fetchFn("./config.json");
    if (!res.ok) {
      return DEFAULT_CONFIG;
    }
    const data: unknown = await res.json();
    if (
      typeof data === "object" &&
      data !== null &&
      typeof (data as Record<string, unknown>)["serviceUrl"] === "string"
    ) {
      return { serviceUrl: sanitize((data as { serviceUrl: string }).serviceUrl) };
    }
    return DEFAULT_CONFIG;
  } catch {
    return DEFAULT_CONFIG;
  }
}
