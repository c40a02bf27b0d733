/** Result-CSV parsing and client-side median recomputation.
 *
 * The chart never trusts the server's `# median` comment lines: medians are
 * recomputed from the raw rows so the CSV stays the single source of truth.
 */

export interface ResultRow {
  engine: string;
  operator: string;
  dataset: string;
  rows: number;
  cols: number;
  phase: "insert" | "query";
  rep: number;
  elapsed_ms: number;
}

export interface ParsedResults {
  rows: ResultRow[];
  commentWinner: string | null;
  commentMedians: Record<string, number>;
}

export const CSV_HEADER = "engine,operator,dataset,rows,cols,phase,rep,elapsed_ms";

export function parseResultsCsv(text: string): ParsedResults {
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines[0] !== CSV_HEADER) {
    throw new Error(`unexpected CSV header: ${lines[0]}`);
  }
  const rows: ResultRow[] = [];
  let commentWinner: string | null = null;
  const commentMedians: Record<string, number> = {};
  for (const line of lines.slice(1)) {
    if (line.startsWith("#")) {
      const parts = line.slice(1).split(",").map((p) => p.trim());
      if (parts[0] === "winner") commentWinner = parts[1];
      if (parts[0] === "median") commentMedians[parts[1]] = Number(parts[2]);
      continue;
    }
    const cells = line.split(",");
    rows.push({
      engine: cells[0],
      operator: cells[1],
      dataset: cells[2],
      rows: Number(cells[3]),
      cols: Number(cells[4]),
      phase: cells[5] as ResultRow["phase"],
      rep: Number(cells[6]),
      elapsed_ms: Number(cells[7]),
    });
  }
  return { rows, commentWinner, commentMedians };
}

export function median(values: number[]): number {
  const sorted = [...values].sort((a, b) => a - b);
  const mid = Math.floor(sorted.length / 2);
  return sorted.length % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
}

/** Per-engine median elapsed time of one phase, recomputed from raw rows. */
export function medianByEngine(rows: ResultRow[], phase: ResultRow["phase"]): Record<string, number> {
  const grouped: Record<string, number[]> = {};
  for (const row of rows) {
    if (row.phase !== phase) continue;
    (grouped[row.engine] ??= []).push(row.elapsed_ms);
  }
  const out: Record<string, number> = {};
  for (const engine of Object.keys(grouped)) out[engine] = median(grouped[engine]);
  return out;
}

/** Ascending by median, ties on the engine id: the first entry wins. */
export function rankEngines(queryMedians: Record<string, number>): string[] {
  return Object.keys(queryMedians).sort((a, b) => {
    const d = queryMedians[a] - queryMedians[b];
    return d !== 0 ? d : a < b ? -1 : 1;
  });
}
