import type {
  CommitmentsPayload,
  ScenarioMeta,
  SessionCreated,
  SessionInfo,
  StepReport,
  Verdict,
} from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function fail(res: Response): Promise<never> {
  let detail = res.statusText;
  try {
    const body = await res.json();
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    /* non-JSON error body */
  }
  throw new ApiError(detail, res.status);
}

/** Thin typed client; every method returns the server payload untouched. */
export class Client {
  constructor(readonly base: string = "") {}

  private async getJson<T>(path: string): Promise<T> {
    const res = await fetch(this.base + path);
    if (!res.ok) return fail(res);
    return (await res.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const res = await fetch(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) return fail(res);
    return (await res.json()) as T;
  }

  async scenarios(): Promise<ScenarioMeta[]> {
    const data = await this.getJson<{ scenarios: ScenarioMeta[] }>("/scenarios");
    return data.scenarios;
  }

  createSession(scenario: string, entailment?: string): Promise<SessionCreated> {
    return this.postJson("/sessions", { scenario, entailment: entailment ?? null });
  }

  sessionInfo(sessionId: string): Promise<SessionInfo> {
    return this.getJson(`/sessions/${sessionId}`);
  }

  /** Query one point, keeping the raw response text for parity checks. */
  async query(sessionId: string, x: number[]): Promise<{ report: StepReport; raw: string }> {
    const res = await fetch(`${this.base}/sessions/${sessionId}/query`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ x }),
    });
    if (!res.ok) return fail(res);
    const raw = await res.text();
    return { report: JSON.parse(raw) as StepReport, raw };
  }

  async transcript(sessionId: string): Promise<string> {
    const res = await fetch(`${this.base}/sessions/${sessionId}/transcript`);
    if (!res.ok) return fail(res);
    return res.text();
  }

  commitments(sessionId: string): Promise<CommitmentsPayload> {
    return this.getJson(`/sessions/${sessionId}/commitments`);
  }

  runCheck(scenario: string, property: string, bound: Record<string, unknown>): Promise<Verdict> {
    return this.postJson("/checks", { scenario, property, bound });
  }
}
