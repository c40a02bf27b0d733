/** The benchmark console: pick engines, operator, dataset and shape; run;
 * read the chart; iterate.  One run may be in flight at a time; errors
 * surface inline without losing any form state.
 */

import { ApiError, BenchClient, DatasetInfo, OperatorInfo } from "./api";
import { renderChart } from "./chart";
import { medianByEngine, parseResultsCsv, rankEngines, ResultRow } from "./csv";

export interface RunHistoryEntry {
  params: Record<string, string>;
  rows: ResultRow[];
  winner: string;
  submittedAt: Date;
}

const UPLOAD_OPTION = "__user_dataset__";

export class App {
  readonly client: BenchClient;
  readonly root: HTMLElement;
  readonly history: RunHistoryEntry[] = [];

  private operators: OperatorInfo[] = [];
  private datasets: DatasetInfo[] = [];
  private running = false;

  constructor(root: HTMLElement, baseUrl = "") {
    this.root = root;
    this.client = new BenchClient(baseUrl);
  }

  async init(): Promise<void> {
    const [operators, datasets, engines] = await Promise.all([
      this.client.listOperators(),
      this.client.listDatasets(),
      this.client.listEngines(),
    ]);
    this.operators = operators;
    this.datasets = datasets;

    this.root.innerHTML = `
      <h1>Time-series engine benchmark</h1>
      <form id="run-form">
        <fieldset id="engines"><legend>Engines</legend></fieldset>
        <label>Operator
          <select id="operator" data-testid="operator"></select>
        </label>
        <div id="params" data-testid="params"></div>
        <label>Dataset
          <select id="dataset" data-testid="dataset"></select>
        </label>
        <span id="dataset-info"></span>
        <div id="upload-box" hidden>
          <input type="file" id="file" accept=".csv" data-testid="file" />
          <span id="upload-echo" data-testid="upload-echo"></span>
        </div>
        <label>Rows <input type="number" id="rows" min="1" data-testid="rows" /></label>
        <label>Cols <input type="number" id="cols" min="1" data-testid="cols" /></label>
        <label>Reps <input type="number" id="reps" min="1" value="5" /></label>
        <button type="submit" id="run" data-testid="run" disabled>Run</button>
      </form>
      <div id="error" role="alert" data-testid="error" hidden></div>
      <div id="winner" data-testid="winner"></div>
      <div id="chart"></div>
      <h2>History</h2>
      <ol id="history" data-testid="history"></ol>
    `;

    const engineBox = this.el("#engines");
    for (const engine of engines) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.value = engine.id;
      box.checked = true;
      box.className = "engine";
      label.appendChild(box);
      label.appendChild(document.createTextNode(` ${engine.display_name}`));
      engineBox.appendChild(label);
    }

    const operatorSelect = this.el<HTMLSelectElement>("#operator");
    for (const op of operators) {
      const opt = document.createElement("option");
      opt.value = op.name;
      opt.textContent = op.name;
      operatorSelect.appendChild(opt);
    }
    operatorSelect.value = "sum";
    this.renderParams();

    this.populateDatasets(datasets[0]?.id);

    this.root.addEventListener("input", () => this.refreshValidity());
    this.root.addEventListener("change", (ev) => {
      const target = ev.target as HTMLElement;
      if (target.id === "operator") this.renderParams();
      if (target.id === "dataset") this.onDatasetChange();
      if (target.id === "file") void this.onFilePicked();
      this.refreshValidity();
    });
    this.el<HTMLFormElement>("#run-form").addEventListener("submit", (ev) => {
      ev.preventDefault();
      void this.submitRun();
    });
    this.refreshValidity();
  }

  el<T extends HTMLElement = HTMLElement>(selector: string): T {
    const found = this.root.querySelector(selector);
    if (!found) throw new Error(`missing element ${selector}`);
    return found as T;
  }

  private populateDatasets(selected?: string): void {
    const select = this.el<HTMLSelectElement>("#dataset");
    select.textContent = "";
    for (const ds of this.datasets) {
      const opt = document.createElement("option");
      opt.value = ds.id;
      opt.textContent = `${ds.id} (${ds.n_series}x${ds.n_rows}${ds.kind === "uploaded" ? ", uploaded" : ""})`;
      select.appendChild(opt);
    }
    const upload = document.createElement("option");
    upload.value = UPLOAD_OPTION;
    upload.textContent = "User Dataset...";
    select.appendChild(upload);
    if (selected) select.value = selected;
    this.onDatasetChange();
  }

  private currentDataset(): DatasetInfo | undefined {
    const id = this.el<HTMLSelectElement>("#dataset").value;
    return this.datasets.find((d) => d.id === id);
  }

  private onDatasetChange(): void {
    const select = this.el<HTMLSelectElement>("#dataset");
    const uploadBox = this.el("#upload-box");
    uploadBox.hidden = select.value !== UPLOAD_OPTION;
    const info = this.currentDataset();
    const rows = this.el<HTMLInputElement>("#rows");
    const cols = this.el<HTMLInputElement>("#cols");
    if (info) {
      rows.max = String(info.n_rows);
      cols.max = String(info.n_series);
      if (!rows.value || Number(rows.value) > info.n_rows) {
        rows.value = String(Math.min(100, info.n_rows));
      }
      if (!cols.value || Number(cols.value) > info.n_series) {
        cols.value = String(Math.min(5, info.n_series));
      }
      this.el("#dataset-info").textContent =
        `${info.n_series} series x ${info.n_rows} rows, ${info.regularity}`;
    } else {
      this.el("#dataset-info").textContent = "";
    }
  }

  private renderParams(): void {
    const op = this.operators.find((o) => o.name === this.el<HTMLSelectElement>("#operator").value);
    const box = this.el("#params");
    box.textContent = "";
    if (!op) return;
    for (const param of op.params) {
      const label = document.createElement("label");
      label.textContent = `${param.name} `;
      const input = document.createElement("input");
      input.name = param.name;
      input.className = "op-param";
      input.title = param.doc;
      if (param.type === "str") {
        input.type = "text";
        input.placeholder = "default";
      } else {
        input.type = "number";
        if (param.type === "float") input.step = "any";
        if (param.min !== null) input.min = String(param.min);
        if (param.max !== null) input.max = String(param.max);
        if (param.default !== null) input.value = String(param.default);
        else input.placeholder = "auto";
      }
      label.appendChild(input);
      box.appendChild(label);
    }
  }

  selectedEngines(): string[] {
    return Array.from(this.root.querySelectorAll<HTMLInputElement>(".engine"))
      .filter((box) => box.checked)
      .map((box) => box.value);
  }

  /** The run invariant: engines, operator, known dataset, in-range shape. */
  formValid(): boolean {
    if (this.running) return false;
    if (!this.selectedEngines().length) return false;
    if (!this.el<HTMLSelectElement>("#operator").value) return false;
    const info = this.currentDataset();
    if (!info) return false;
    const rows = Number(this.el<HTMLInputElement>("#rows").value);
    const cols = Number(this.el<HTMLInputElement>("#cols").value);
    if (!Number.isInteger(rows) || rows < 1 || rows > info.n_rows) return false;
    if (!Number.isInteger(cols) || cols < 1 || cols > info.n_series) return false;
    for (const input of this.root.querySelectorAll<HTMLInputElement>(".op-param")) {
      if (input.type !== "number" || input.value === "") continue;
      const v = Number(input.value);
      if (input.min !== "" && v < Number(input.min)) return false;
      if (input.max !== "" && v > Number(input.max)) return false;
    }
    const reps = Number(this.el<HTMLInputElement>("#reps").value);
    if (!Number.isInteger(reps) || reps < 1) return false;
    return true;
  }

  refreshValidity(): void {
    this.el<HTMLButtonElement>("#run").disabled = !this.formValid();
  }

  collectRunParams(): Record<string, string> {
    const params: Record<string, string> = {
      engines: this.selectedEngines().join(","),
      operator: this.el<HTMLSelectElement>("#operator").value,
      dataset: this.el<HTMLSelectElement>("#dataset").value,
      rows: this.el<HTMLInputElement>("#rows").value,
      cols: this.el<HTMLInputElement>("#cols").value,
      reps: this.el<HTMLInputElement>("#reps").value,
    };
    for (const input of this.root.querySelectorAll<HTMLInputElement>(".op-param")) {
      if (input.value !== "") params[input.name] = input.value;
    }
    return params;
  }

  showError(err: ApiError | Error): void {
    const box = this.el("#error");
    box.hidden = false;
    box.textContent = "code" in err ? `${err.code}: ${err.message}` : String(err);
  }

  clearError(): void {
    const box = this.el("#error");
    box.hidden = true;
    box.textContent = "";
  }

  async submitRun(): Promise<void> {
    if (!this.formValid()) return;
    this.running = true;
    this.refreshValidity();
    this.clearError();
    const params = this.collectRunParams();
    try {
      const csv = await this.client.run(params);
      const parsed = parseResultsCsv(csv);
      this.renderResults(parsed.rows);
      this.history.push({
        params,
        rows: parsed.rows,
        winner: this.winnerOf(parsed.rows),
        submittedAt: new Date(),
      });
      this.renderHistory();
    } catch (err) {
      this.showError(err as ApiError);
    } finally {
      this.running = false;
      this.refreshValidity();
    }
  }

  /** Winner derived from the raw rows, never from the CSV comment lines. */
  winnerOf(rows: ResultRow[]): string {
    return rankEngines(medianByEngine(rows, "query"))[0];
  }

  renderResults(rows: ResultRow[]): void {
    const insert = medianByEngine(rows, "insert");
    const query = medianByEngine(rows, "query");
    const data = rankEngines(query).map((engine) => ({
      engine,
      insert: insert[engine] ?? 0,
      query: query[engine],
    }));
    renderChart(this.el("#chart"), data);
    this.el("#winner").textContent =
      `Recommended engine: ${data[0].engine} (median query ${data[0].query.toFixed(3)} ms)`;
  }

  renderHistory(): void {
    const list = this.el("#history");
    list.textContent = "";
    this.history.forEach((entry, i) => {
      const item = document.createElement("li");
      const link = document.createElement("a");
      link.href = "#";
      link.dataset.index = String(i);
      link.textContent =
        `${entry.params.operator} on ${entry.params.dataset} ` +
        `(${entry.params.rows}x${entry.params.cols}) -> ${entry.winner}`;
      link.addEventListener("click", (ev) => {
        ev.preventDefault();
        this.renderResults(entry.rows);
      });
      item.appendChild(link);
      list.appendChild(item);
    });
  }

  async onFilePicked(): Promise<void> {
    const input = this.el<HTMLInputElement>("#file");
    const file = input.files?.[0];
    if (!file) return;
    this.clearError();
    const name = file.name.replace(/\.csv$/i, "") || "uploaded";
    try {
      const body = await file.text();
      const echo = await this.client.uploadDataset(name, body);
      this.el("#upload-echo").textContent = `${echo.rows} rows x ${echo.series} series`;
      this.datasets = await this.client.listDatasets();
      this.populateDatasets(name);
      this.refreshValidity();
    } catch (err) {
      this.showError(err as ApiError);
    }
  }
}

export async function boot(root: HTMLElement, baseUrl = ""): Promise<App> {
  const app = new App(root, baseUrl);
  await app.init();
  return app;
}
