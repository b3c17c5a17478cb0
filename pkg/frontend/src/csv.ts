// Reader for the solver's sweep CSV (schema "muletree-sweep-v1").
// The file starts with a "# muletree-sweep-v1" comment line, then a fixed
// header; epsilon_hat may hold the literal marker "cond-violated" when the
// estimator's average-distance condition fails.

export const SCHEMA = "muletree-sweep-v1";

export const COLUMNS = [
  "area",
  "density",
  "seed",
  "n",
  "diameter",
  "alpha",
  "alpha_valid",
  "weight_cds",
  "lb",
  "epsilon_hat",
  "solution_cost",
  "runtime_ms",
] as const;

export const EPS_UNDEFINED = "cond-violated";

export interface SweepRow {
  area: number;
  density: number;
  seed: string; // 64-bit values; kept as text to avoid precision loss
  n: number;
  diameter: number;
  alpha: number;
  alphaValid: boolean;
  weightCds: number;
  lb: number;
  epsilonHat: number | null;
  solutionCost: number;
  runtimeMs: number;
}

export class SchemaError extends Error {}

function num(field: string, value: string, line: number): number {
  const x = Number(value);
  if (value === "" || Number.isNaN(x)) {
    throw new SchemaError(
      `line ${line}: column "${field}" holds non-numeric value "${value}"`,
    );
  }
  return x;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split("\n").filter((ln) => ln.length > 0);
  if (lines.length === 0 || !lines[0].startsWith(`# ${SCHEMA}`)) {
    throw new SchemaError(`missing schema comment line "# ${SCHEMA}"`);
  }
  const header = (lines[1] ?? "").split(",");
  for (let i = 0; i < COLUMNS.length; i++) {
    if (header[i] !== COLUMNS[i]) {
      throw new SchemaError(
        `header mismatch: expected column "${COLUMNS[i]}" at position ${i}, got "${header[i] ?? ""}"`,
      );
    }
  }
  const rows: SweepRow[] = [];
  for (let i = 2; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== COLUMNS.length) {
      throw new SchemaError(
        `line ${i + 1}: expected ${COLUMNS.length} fields, got ${parts.length}`,
      );
    }
    rows.push({
      area: num("area", parts[0], i + 1),
      density: num("density", parts[1], i + 1),
      seed: parts[2],
      n: num("n", parts[3], i + 1),
      diameter: num("diameter", parts[4], i + 1),
      alpha: num("alpha", parts[5], i + 1),
      alphaValid: parts[6] === "1",
      weightCds: num("weight_cds", parts[7], i + 1),
      lb: num("lb", parts[8], i + 1),
      epsilonHat:
        parts[9] === EPS_UNDEFINED ? null : num("epsilon_hat", parts[9], i + 1),
      solutionCost: num("solution_cost", parts[10], i + 1),
      runtimeMs: num("runtime_ms", parts[11], i + 1),
    });
  }
  if (rows.length === 0) {
    throw new SchemaError("CSV has a valid header but no data rows");
  }
  return rows;
}
