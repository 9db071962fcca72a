import type { CommitmentsPayload, FeatureMeta, PairJson, PointJson } from "./types.js";

// Label colors are positional in the scenario's declared label order.
export const PALETTE = ["#4e79a7", "#e15759", "#59a14f", "#f28e2b", "#b07aa1", "#76b7b2"];

export function labelColor(labels: string[], label: string): string {
  const idx = labels.indexOf(label);
  return PALETTE[idx % PALETTE.length] ?? PALETTE[0]!;
}

export interface HeatmapCell {
  x: PointJson;
  labels: string[];       // committed labels at this point, as reported
  color: string | null;   // null = hatched (no commitment)
  conflict: boolean;      // two or more committed labels
  retracted: boolean;     // a commitment at this point was lost this step
}

export interface HeatmapModel {
  xAxis: number[]; // first feature, left to right
  yAxis: number[]; // second feature, top to bottom (max first)
  cells: HeatmapCell[][]; // [row][col]
}

export function canRenderHeatmap(features: FeatureMeta[]): boolean {
  return features.length === 2;
}

function axisValues(feature: FeatureMeta): number[] {
  const values: number[] = [];
  for (let v = feature.min; v <= feature.max; v += feature.step) values.push(v);
  return values;
}

/** Pure view model for a two-feature commitment grid. Every cell value
 * comes from the commitments payload; retraction marks come from the
 * server's delta field of the latest step. */
export function buildHeatmapModel(
  features: FeatureMeta[],
  labels: string[],
  commitments: CommitmentsPayload,
  retractedPairs: PairJson[],
): HeatmapModel {
  if (!canRenderHeatmap(features)) {
    throw new Error("heatmap is only defined for two-feature grids");
  }
  const committed = new Map<string, string[]>();
  for (const [point, pointLabels] of commitments.entries) {
    committed.set(JSON.stringify(point), pointLabels);
  }
  const retracted = new Set(retractedPairs.map(([point]) => JSON.stringify(point)));

  const xAxis = axisValues(features[0]!);
  const yAxis = axisValues(features[1]!).reverse();
  const cells = yAxis.map((gy) =>
    xAxis.map((fx) => {
      const point = [fx, gy];
      const key = JSON.stringify(point);
      const pointLabels = committed.get(key) ?? [];
      const first = pointLabels[0];
      return {
        x: point,
        labels: pointLabels,
        color: pointLabels.length === 1 && first !== undefined ? labelColor(labels, first) : null,
        conflict: pointLabels.length >= 2,
        retracted: retracted.has(key),
      };
    }),
  );
  return { xAxis, yAxis, cells };
}

/** Fallback for grids with more than two features: a plain table of the
 * reported entries, no geometry. */
export function tabularModel(commitments: CommitmentsPayload): { point: PointJson; labels: string[] }[] {
  return commitments.entries.map(([point, labels]) => ({ point, labels }));
}
