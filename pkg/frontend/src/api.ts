import type {
  ApplyResult,
  DatasetInfo,
  DemoBody,
  ImageAnnotation,
  ImageInfo,
  SessionInfo,
  SessionState,
  SynthesisResult,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = typeof fetch;

/** Thin typed client over the session HTTP API. */
export class ApiClient {
  constructor(
    public baseUrl: string,
    private fetchImpl: FetchLike = fetch,
  ) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  url(path: string): string {
    return this.baseUrl + path;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.url(path), init);
    if (!resp.ok) {
      let code = "unknown";
      let message = resp.statusText;
      try {
        const body = await resp.json();
        // fastapi wraps structured errors in "detail"
        const detail = body.detail ?? body;
        if (detail && typeof detail === "object") {
          code = detail.code ?? code;
          message = detail.message ?? message;
        }
      } catch {
        /* non-JSON error body; keep the status text */
      }
      throw new ApiError(resp.status, code, message);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: body === undefined ? "{}" : JSON.stringify(body),
    });
  }

  async listDatasets(): Promise<DatasetInfo[]> {
    const r = await this.request<{ datasets: DatasetInfo[] }>("/datasets");
    return r.datasets;
  }

  async listImages(dataset: string): Promise<ImageInfo[]> {
    const r = await this.request<{ images: ImageInfo[] }>(
      `/datasets/${dataset}/images`,
    );
    return r.images;
  }

  getObjects(dataset: string, imageId: string): Promise<ImageAnnotation> {
    return this.request(`/datasets/${dataset}/images/${imageId}/objects`);
  }

  createSession(dataset: string): Promise<SessionInfo> {
    return this.post("/sessions", { dataset });
  }

  postDemos(sessionId: string, demos: DemoBody): Promise<SessionState> {
    return this.post(`/sessions/${sessionId}/demos`, demos);
  }

  synthesize(
    sessionId: string,
    options?: { budget_s?: number; max_size?: number },
  ): Promise<SynthesisResult> {
    return this.post(`/sessions/${sessionId}/synthesize`, options ?? {});
  }

  async getProgram(sessionId: string): Promise<string> {
    const r = await this.request<{ program: string }>(
      `/sessions/${sessionId}/program`,
    );
    return r.program;
  }

  apply(sessionId: string): Promise<ApplyResult> {
    return this.post(`/sessions/${sessionId}/apply`);
  }
}
