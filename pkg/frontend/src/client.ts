// Thin HTTP client for the session service. Raw response text is kept for
// byte-equality contracts (the panel displays exactly what the service said).

import type {
  AssessResponse,
  CreateSessionResponse,
  SceneUploadResponse,
  StateResponse,
  StepResponse,
  SolveResponse,
  TargetBody,
  Vec3,
} from "./types";

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number | null = null,
    readonly detail: unknown = null,
  ) {
    super(message);
  }
}

export interface RawResponse<T> {
  status: number;
  text: string;
  body: T;
}

type FetchLike = typeof fetch;

export class ServiceClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<RawResponse<T>> {
    let resp: Response;
    try {
      resp = await this.fetchImpl(`${this.baseUrl}${path}`, {
        method,
        headers: body === undefined ? undefined : { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ServiceError(`service unreachable: ${String(err)}`);
    }
    const text = await resp.text();
    let parsed: unknown = null;
    try {
      parsed = text ? JSON.parse(text) : null;
    } catch {
      parsed = null;
    }
    if (!resp.ok) {
      const detail =
        parsed && typeof parsed === "object" && "detail" in parsed
          ? (parsed as { detail: unknown }).detail
          : parsed;
      throw new ServiceError(`${method} ${path} -> ${resp.status}`, resp.status, detail);
    }
    return { status: resp.status, text, body: parsed as T };
  }

  async health(): Promise<boolean> {
    try {
      await this.request("GET", "/health");
      return true;
    } catch {
      return false;
    }
  }

  async createSession(body: {
    sex: string;
    percentile?: number;
    stature_mm?: number;
    weight_kg?: number;
    live_method?: string;
  }): Promise<CreateSessionResponse> {
    return (await this.request<CreateSessionResponse>("POST", "/sessions", body)).body;
  }

  async getState(sessionId: string): Promise<StateResponse> {
    return (await this.request<StateResponse>("GET", `/sessions/${sessionId}/state`))
      .body;
  }

  async stepIk(
    sessionId: string,
    target: TargetBody,
    dt = 0.02,
    context?: Record<string, unknown>,
    liveMethod?: string,
  ): Promise<StepResponse> {
    return (
      await this.request<StepResponse>("POST", `/sessions/${sessionId}/ik/step`, {
        target,
        dt,
        context,
        live_method: liveMethod,
      })
    ).body;
  }

  async solveIk(sessionId: string, targets: TargetBody[]): Promise<SolveResponse> {
    return (
      await this.request<SolveResponse>("POST", `/sessions/${sessionId}/ik/solve`, {
        targets,
      })
    ).body;
  }

  /** Raw variant kept for the panel's byte-equality contract. */
  async assessRaw(
    sessionId: string,
    methods: string[],
    context: Record<string, unknown>,
  ): Promise<RawResponse<AssessResponse>> {
    return this.request<AssessResponse>("POST", `/sessions/${sessionId}/assess`, {
      methods,
      context,
    });
  }

  async uploadScene(name: string, contentBase64: string): Promise<SceneUploadResponse> {
    return (
      await this.request<SceneUploadResponse>("POST", "/scenes", {
        name,
        content_b64: contentBase64,
      })
    ).body;
  }

  async attachScene(sessionId: string, sceneId: string): Promise<void> {
    await this.request("POST", `/sessions/${sessionId}/scenes/${sceneId}/attach`);
  }

  async vision(sessionId: string, target: Vec3): Promise<{
    classification: string;
    angle_deg: number;
    visible: boolean;
  }> {
    return (
      await this.request<{ classification: string; angle_deg: number; visible: boolean }>(
        "POST",
        `/sessions/${sessionId}/vision`,
        { target },
      )
    ).body;
  }
}
