/** Typed client for the benchmark service HTTP interface. */

export interface OperatorParam {
  name: string;
  type: "int" | "float" | "str";
  default: number | string | null;
  min: number | null;
  max: number | null;
  doc: string;
}

export interface OperatorInfo {
  name: string;
  doc: string;
  params: OperatorParam[];
  modes: Record<string, string[]>;
}

export interface DatasetInfo {
  id: string;
  kind: "builtin" | "uploaded";
  n_series: number;
  n_rows: number;
  regularity: string;
  features: string[];
}

export interface EngineInfo {
  id: string;
  display_name: string;
}

export interface ApiError {
  status: number;
  code: string;
  message: string;
}

async function getJson<T>(url: string): Promise<T> {
  const res = await fetch(url);
  if (!res.ok) throw await toApiError(res);
  return (await res.json()) as T;
}

async function toApiError(res: Response): Promise<ApiError> {
  try {
    const body = await res.json();
    return { status: res.status, code: body.code ?? "Error", message: body.message ?? "" };
  } catch {
    return { status: res.status, code: "Error", message: res.statusText };
  }
}

export class BenchClient {
  constructor(private base: string = "") {}

  listOperators(): Promise<OperatorInfo[]> {
    return getJson(`${this.base}/api/operators`);
  }

  listDatasets(): Promise<DatasetInfo[]> {
    return getJson(`${this.base}/api/datasets`);
  }

  listEngines(): Promise<EngineInfo[]> {
    return getJson(`${this.base}/api/engines`);
  }

  /** Runs one benchmark; resolves to the raw result CSV text. */
  async run(params: Record<string, string>): Promise<string> {
    const qs = new URLSearchParams(params).toString();
    const res = await fetch(`${this.base}/api/run?${qs}`);
    if (!res.ok) throw await toApiError(res);
    return res.text();
  }

  async uploadDataset(name: string, csvBody: string): Promise<{ rows: number; series: number }> {
    const res = await fetch(`${this.base}/api/datasets/${encodeURIComponent(name)}`, {
      method: "POST",
      body: csvBody,
    });
    if (!res.ok) throw await toApiError(res);
    return res.json();
  }
}
