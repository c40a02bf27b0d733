/** Grouped bar chart of per-engine median insert and query times (plain SVG). */

const SVG_NS = "http://www.w3.org/2000/svg";

export interface EngineMedians {
  engine: string;
  insert: number;
  query: number;
}

const WIDTH = 640;
const HEIGHT = 300;
const MARGIN = { top: 20, right: 16, bottom: 44, left: 64 };
const COLORS: Record<string, string> = { insert: "#8888d8", query: "#2f9e44" };

function svgEl(tag: string, attrs: Record<string, string | number>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, String(v));
  return el;
}

export function renderChart(container: HTMLElement, data: EngineMedians[]): void {
  container.textContent = "";
  if (!data.length) return;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: "100%",
    "data-testid": "results-chart",
  });
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const maxValue = Math.max(...data.flatMap((d) => [d.insert, d.query]), 1e-9);

  const groupWidth = plotW / data.length;
  const barWidth = Math.min(48, groupWidth / 3);

  data.forEach((d, i) => {
    const cx = MARGIN.left + groupWidth * (i + 0.5);
    (["insert", "query"] as const).forEach((phase, j) => {
      const value = d[phase];
      const h = (value / maxValue) * plotH;
      const bar = svgEl("rect", {
        x: cx - barWidth + j * (barWidth + 2),
        y: MARGIN.top + plotH - h,
        width: barWidth,
        height: Math.max(h, 0.5),
        fill: COLORS[phase],
        "data-engine": d.engine,
        "data-phase": phase,
        "data-value": value,
      });
      svg.appendChild(bar);
    });
    const label = svgEl("text", {
      x: cx,
      y: HEIGHT - MARGIN.bottom + 18,
      "text-anchor": "middle",
      "font-size": 13,
    });
    label.textContent = d.engine;
    svg.appendChild(label);
    const values = svgEl("text", {
      x: cx,
      y: HEIGHT - MARGIN.bottom + 34,
      "text-anchor": "middle",
      "font-size": 11,
      fill: "#555",
    });
    values.textContent = `ins ${d.insert.toFixed(3)} / qry ${d.query.toFixed(3)} ms`;
    svg.appendChild(values);
  });

  const axis = svgEl("line", {
    x1: MARGIN.left, y1: MARGIN.top + plotH,
    x2: WIDTH - MARGIN.right, y2: MARGIN.top + plotH,
    stroke: "#333",
  });
  svg.appendChild(axis);
  const scale = svgEl("text", { x: MARGIN.left - 6, y: MARGIN.top + 10, "text-anchor": "end", "font-size": 11 });
  scale.textContent = `${maxValue.toFixed(3)} ms`;
  svg.appendChild(scale);

  container.appendChild(svg);
}
