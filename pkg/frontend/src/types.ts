// Wire types, mirroring the service's JSON payloads exactly.
// The client renders these verbatim; it never re-derives commitments.

export type PointJson = number[];
export type PairJson = [PointJson, string];

export interface FeatureMeta {
  name: string;
  min: number;
  max: number;
  step: number;
}

export interface ScenarioMeta {
  name: string;
  features: FeatureMeta[];
  labels: string[];
  entailment: string;
  queries: PointJson[];
  checks: Record<string, unknown>[];
}

export interface Alert {
  kind: "inconsistency" | "retraction" | "stability_violation" | "reflexivity_breach";
  x?: PointJson;
  labels?: string[];
  old?: string;
  new?: string | null;
  index?: number;
}

export interface StepReport {
  step: number;
  x: PointJson;
  y: string;
  explanations: string[][];
  delta: {
    added: PairJson[];
    retracted: PairJson[];
    kept: PairJson[];
  };
  alerts: Alert[];
}

export interface SessionCreated {
  session_id: string;
  scenario: ScenarioMeta;
}

export interface SessionInfo {
  session_id: string;
  scenario: ScenarioMeta;
  step: number;
  history: PairJson[];
}

export interface CommitmentsPayload {
  step: number;
  entries: [PointJson, string[]][];
}

export interface Verdict {
  property: string;
  status: "holds_up_to_bound" | "fails";
  bound: number;
  examined: { sequences: number; candidates: number };
  witness?: Record<string, unknown>;
  ok?: boolean;
}
