// Client for the analysis service's POST /v1/analyze contract.
// Request and response shapes mirror the service exactly; anything the
// service would reject, or any response we cannot parse into a
// SiteReport, becomes a ServiceError with a human-readable cause.

export const DEFAULT_ENDPOINT = "http://127.0.0.1:8000";

export interface AnalyzeDocument {
  source: string;
  kind: string;
  paragraphs: string[];
}

export interface AnalyzeRequestBody {
  url: string;
  documents: AnalyzeDocument[];
}

export interface ReportCounts {
  good: number;
  neutral: number;
  bad: number;
  blocker: number;
  total: number;
}

export interface ReportItem {
  document_index: number;
  paragraph_index: number;
  summary: string;
  label: string;
  scores: Record<string, number>;
}

export interface SiteReport {
  counts: ReportCounts;
  score: number;
  grade: string;
  degraded: boolean;
  items: ReportItem[];
}

export class ServiceError extends Error {}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

/** Validate a service response body into a SiteReport. */
export function parseSiteReport(payload: unknown): SiteReport {
  if (!isRecord(payload)) throw new ServiceError("malformed response: not an object");
  const counts = payload["counts"];
  if (!isRecord(counts)) throw new ServiceError("malformed response: missing counts");
  for (const key of ["good", "neutral", "bad", "blocker", "total"]) {
    if (typeof counts[key] !== "number") {
      throw new ServiceError(`malformed response: counts.${key} missing`);
    }
  }
  if (typeof payload["score"] !== "number") {
    throw new ServiceError("malformed response: score missing");
  }
  if (typeof payload["grade"] !== "string") {
    throw new ServiceError("malformed response: grade missing");
  }
  if (!Array.isArray(payload["items"])) {
    throw new ServiceError("malformed response: items missing");
  }
  return {
    counts: counts as unknown as ReportCounts,
    score: payload["score"],
    grade: payload["grade"],
    degraded: payload["degraded"] === true,
    items: payload["items"] as ReportItem[],
  };
}

/** POST the documents to `<endpoint>/v1/analyze` and return the parsed
 * SiteReport. Network failures, non-2xx statuses and malformed bodies
 * all raise ServiceError. */
export async function requestAnalysis(
  endpoint: string,
  body: AnalyzeRequestBody,
  fetchImpl: FetchLike = fetch,
): Promise<SiteReport> {
  const url = endpoint.replace(/\/+$/, "") + "/v1/analyze";
  let response: Response;
  try {
    response = await fetchImpl(url, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  } catch (err) {
    throw new ServiceError(`cannot reach ${endpoint}: ${String(err)}`);
  }
  if (!response.ok) {
    let detail = `service returned HTTP ${response.status}`;
    try {
      const payload: unknown = await response.json();
      if (isRecord(payload) && typeof payload["error"] === "string") {
        detail += `: ${payload["error"]}`;
      }
    } catch {
      // keep the bare status line
    }
    throw new ServiceError(detail);
  }
  let payload: unknown;
  try {
    payload = await response.json();
  } catch {
    throw new ServiceError("malformed response: not JSON");
  }
  return parseSiteReport(payload);
}
