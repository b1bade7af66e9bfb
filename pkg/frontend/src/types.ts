/** Shapes of the documents exchanged with the scoring service. */

export interface ConsistencyPayload {
  lambda_max: number;
  ci: number;
  ri: number;
  cr: number;
  gci: number;
  cr_accepted: boolean;
  alonso_lamata_accepted: boolean;
}

export interface SessionDoc {
  schema: string;
  kind: "session";
  session_id: string;
  status: "draft" | "finalized";
  auto_reciprocal: boolean;
  version: number;
  hierarchy: HierarchyDoc;
  experts: string[];
  matrices: Record<string, Record<string, number[][]>>;
}

export interface HierarchyDoc {
  schema: string;
  kind: "hierarchy";
  criteria: CriterionDoc[];
}

export interface CriterionDoc {
  id: string;
  name: string;
  indicators: IndicatorDoc[];
}

export interface IndicatorDoc {
  id: string;
  name: string;
  direction: "benefit" | "cost";
  numerator: string;
  denominator: string;
}

export interface CellUpdateResponse {
  version: number;
  matrix: number[][];
  consistency: ConsistencyPayload;
}

export interface Contribution {
  indicator_id: string;
  weight: number;
  value: number;
  product: number;
}

export interface ScoreEntry {
  project_id: string;
  score: number;
  sigma: number;
  contributions: Contribution[];
}

export interface ResultsDoc {
  schema: string;
  kind: "results";
  params: Record<string, unknown>;
  group_weights: { values: number[]; variances: number[] };
  scores: ScoreEntry[];
  consistency: Record<string, Record<string, unknown>>;
  rejected: Record<string, string[]>;
  histogram: { edges: number[]; counts: number[] };
  warnings: string[];
}
