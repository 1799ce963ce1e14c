// Thin typed client over the session service. Every non-2xx response is
// surfaced as an ApiError carrying the server's {"error": ...} message so
// the view can show it as a banner.

import type { SessionInfo, SuggestionsPayload } from "./types.js";

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let message = `request failed (${response.status})`;
  try {
    const body = (await response.json()) as { error?: unknown };
    if (typeof body.error === "string") {
      message = body.error;
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  return new ApiError(response.status, message);
}

async function requestJson<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    throw await parseError(response);
  }
  return (await response.json()) as T;
}

export interface CreateSessionRequest {
  source_csv?: string;
  dest_csv?: string;
  source_path?: string;
  dest_path?: string;
  source_name?: string;
  dest_name?: string;
  config?: { top_n?: number; seed?: number };
}

export class ApiClient {
  readonly baseUrl: string;

  constructor(baseUrl = "") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  createSession(body: CreateSessionRequest): Promise<SessionInfo> {
    return requestJson<SessionInfo>(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getSuggestions(sessionId: string, top?: number): Promise<SuggestionsPayload> {
    const query = top !== undefined ? `?top=${top}` : "";
    return requestJson<SuggestionsPayload>(
      `${this.baseUrl}/sessions/${sessionId}/suggestions${query}`,
    );
  }

  confirm(
    sessionId: string,
    sourceAttr: string,
    destAttr: string,
  ): Promise<SuggestionsPayload> {
    return requestJson<SuggestionsPayload>(
      `${this.baseUrl}/sessions/${sessionId}/confirmations`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ source_attr: sourceAttr, dest_attr: destAttr }),
      },
    );
  }

  reject(
    sessionId: string,
    sourceAttr: string,
    destAttr: string,
  ): Promise<SuggestionsPayload> {
    return requestJson<SuggestionsPayload>(
      `${this.baseUrl}/sessions/${sessionId}/rejections`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ source_attr: sourceAttr, dest_attr: destAttr }),
      },
    );
  }

  matrixCsvUrl(sessionId: string): string {
    return `${this.baseUrl}/sessions/${sessionId}/matrix.csv`;
  }
}
