import type { FeatureMeta, ScenarioMeta, StepReport } from "./types.js";

/** Client-side session view: everything shown is a stored server payload. */
export interface SessionView {
  sessionId: string;
  scenario: ScenarioMeta;
  steps: StepReport[];
  rawLines: string[];
}

export function newView(sessionId: string, scenario: ScenarioMeta): SessionView {
  return { sessionId, scenario, steps: [], rawLines: [] };
}

export function applyReport(view: SessionView, report: StepReport, raw: string): SessionView {
  return {
    ...view,
    steps: [...view.steps, report],
    rawLines: [...view.rawLines, raw.trim()],
  };
}

/** Rebuild the step list from a transcript fetch (page reload path). */
export function fromTranscript(
  sessionId: string,
  scenario: ScenarioMeta,
  transcript: string,
): SessionView {
  const lines = transcript.split("\n").filter((line) => line.length > 0);
  return {
    sessionId,
    scenario,
    steps: lines.map((line) => JSON.parse(line) as StepReport),
    rawLines: lines,
  };
}

export function lastReport(view: SessionView): StepReport | undefined {
  return view.steps[view.steps.length - 1];
}

/** On-grid validation, mirroring the service's grid rule; used to reject
 * bad queries inline before any request is sent. */
export function validatePoint(features: FeatureMeta[], values: (number | null)[]): string | null {
  if (values.length !== features.length) {
    return `need ${features.length} coordinates`;
  }
  for (let i = 0; i < features.length; i++) {
    const feature = features[i]!;
    const value = values[i];
    if (value == null || !Number.isInteger(value)) {
      return `${feature.name}: enter an integer`;
    }
    if (value < feature.min || value > feature.max) {
      return `${feature.name}: ${value} is outside [${feature.min}, ${feature.max}]`;
    }
    if ((value - feature.min) % feature.step !== 0) {
      return `${feature.name}: ${value} is off the step-${feature.step} grid`;
    }
  }
  return null;
}
