import type { Alert, PairJson, StepReport, Verdict } from "./types.js";

export function formatPoint(point: number[]): string {
  return `(${point.join(", ")})`;
}

export function formatPair(pair: PairJson): string {
  return `${formatPoint(pair[0])} -> ${pair[1]}`;
}

/** The retraction panel lists exactly the server-reported retracted
 * pairs of the given step: no filtering, no client arithmetic. */
export function retractionRows(report: StepReport): { point: number[]; label: string; text: string }[] {
  return report.delta.retracted.map(([point, label]) => ({
    point,
    label,
    text: formatPair([point, label]),
  }));
}

export function alertText(alert: Alert): string {
  switch (alert.kind) {
    case "inconsistency":
      return `inconsistency at ${formatPoint(alert.x ?? [])}: committed to ${(alert.labels ?? []).join(" and ")}`;
    case "retraction":
      return `retraction at ${formatPoint(alert.x ?? [])}: ${alert.old} -> ${alert.new ?? "nothing"}`;
    case "stability_violation":
      return `explanation ${alert.index} changed after the fact`;
    case "reflexivity_breach":
      return `history entry ${alert.index} is no longer committed`;
    default:
      return JSON.stringify(alert);
  }
}

export function alertRows(report: StepReport): string[] {
  return report.alerts.map(alertText);
}

// --------------------------------------------------------------------------
// property-panel cards

export interface Card {
  title: string;
  tone: "holds" | "fails" | "error";
  lines: string[];
}

function isPair(value: unknown): value is PairJson {
  return (
    Array.isArray(value) &&
    value.length === 2 &&
    Array.isArray(value[0]) &&
    value[0].every((n) => typeof n === "number") &&
    typeof value[1] === "string"
  );
}

function isRuleList(value: unknown): value is string[] {
  return Array.isArray(value) && value.every((r) => typeof r === "string");
}

/** Render one witness component: a (point, label) pair, a decision set
 * (list of rule texts), a sequence of either, or a plain value. */
export function formatWitnessValue(value: unknown): string {
  if (isPair(value)) return formatPair(value);
  if (isRuleList(value)) return value.length ? `{ ${value.join(" ; ")} }` : "{ }";
  if (Array.isArray(value)) return value.map(formatWitnessValue).join("  ,  ");
  if (typeof value === "object" && value !== null) return JSON.stringify(value);
  return String(value);
}

export function verdictCard(verdict: Verdict): Card {
  const tone = verdict.status === "holds_up_to_bound" ? "holds" : "fails";
  const lines = [
    `status: ${verdict.status} (bound ${verdict.bound})`,
    `examined: ${verdict.examined.sequences} sequences, ${verdict.examined.candidates} candidates`,
  ];
  if (verdict.witness) {
    for (const [key, value] of Object.entries(verdict.witness)) {
      lines.push(`${key}: ${formatWitnessValue(value)}`);
    }
  }
  return { title: verdict.property, tone, lines };
}

export function errorCard(property: string, message: string): Card {
  return { title: property, tone: "error", lines: [message] };
}
