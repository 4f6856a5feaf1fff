export interface Series {
  label: string;
  x: Float64Array;
  y: Float64Array;
  color: string;
  dashed?: boolean;
}

export interface PanelSpec {
  x0: number;
  y0: number;
  width: number;
  height: number;
  xLabel: string;
  yLabel: string;
  series: Series[];
  legend?: boolean;
}

const PALETTE = ["#1761a0", "#c8401f", "#2e823c", "#7b4fa6", "#b8860b", "#3a3a3a"];

export function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function fmt(v: number): string {
  const r = Math.round(v * 100) / 100;
  return Object.is(r, -0) ? "0" : String(r);
}

/** Tick label: short, no float debris. */
function tickFmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return String(Math.round(v * 1e6) / 1e6);
}

export interface Extent {
  min: number;
  max: number;
}

export function extentOf(arrays: ArrayLike<number>[], pad = 0.05): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const a of arrays) {
    for (let i = 0; i < a.length; i++) {
      if (a[i] < min) min = a[i];
      if (a[i] > max) max = a[i];
    }
  }
  if (!(min <= max)) {
    min = 0;
    max = 1;
  }
  if (min === max) {
    const bump = Math.abs(min) > 0 ? 0.1 * Math.abs(min) : 1;
    return { min: min - bump, max: max + bump };
  }
  const span = max - min;
  return { min: min - pad * span, max: max + pad * span };
}

/** Tick positions at a 1/2/5 step covering [min, max]. */
export function niceTicks(min: number, max: number, target = 5): number[] {
  const span = max - min;
  const raw = span / Math.max(target, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = 10 * mag;
  for (const m of [1, 2, 5]) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + 1e-9 * span; v += step) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

export function panel(spec: PanelSpec): string {
  const { x0, y0, width, height } = spec;
  const ex = extentOf(spec.series.map((s) => s.x), 0.0);
  const ey = extentOf(spec.series.map((s) => s.y));
  const sx = (v: number) => x0 + ((v - ex.min) / (ex.max - ex.min)) * width;
  const sy = (v: number) => y0 + height - ((v - ey.min) / (ey.max - ey.min)) * height;
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(x0)}" y="${fmt(y0)}" width="${fmt(width)}" height="${fmt(height)}" ` +
      `fill="none" stroke="#444" stroke-width="1"/>`
  );
  for (const t of niceTicks(ex.min, ex.max)) {
    const px = sx(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(y0)}" x2="${fmt(px)}" y2="${fmt(y0 + height)}" ` +
        `stroke="#ddd" stroke-width="0.5"/>`,
      `<text x="${fmt(px)}" y="${fmt(y0 + height + 16)}" text-anchor="middle" ` +
        `font-size="11">${esc(tickFmt(t))}</text>`
    );
  }
  for (const t of niceTicks(ey.min, ey.max)) {
    const py = sy(t);
    parts.push(
      `<line x1="${fmt(x0)}" y1="${fmt(py)}" x2="${fmt(x0 + width)}" y2="${fmt(py)}" ` +
        `stroke="#ddd" stroke-width="0.5"/>`,
      `<text x="${fmt(x0 - 6)}" y="${fmt(py + 4)}" text-anchor="end" ` +
        `font-size="11">${esc(tickFmt(t))}</text>`
    );
  }
  for (const s of spec.series) {
    const pts: string[] = [];
    for (let i = 0; i < s.x.length; i++) {
      pts.push(`${fmt(sx(s.x[i]))},${fmt(sy(s.y[i]))}`);
    }
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : "";
    parts.push(
      `<polyline points="${pts.join(" ")}" fill="none" stroke="${s.color}" ` +
        `stroke-width="1.5"${dash}/>`
    );
  }
  parts.push(
    `<text x="${fmt(x0 + width / 2)}" y="${fmt(y0 + height + 36)}" text-anchor="middle" ` +
      `font-size="13">${esc(spec.xLabel)}</text>`,
    `<text x="${fmt(x0 - 48)}" y="${fmt(y0 + height / 2)}" text-anchor="middle" ` +
      `font-size="13" transform="rotate(-90 ${fmt(x0 - 48)} ${fmt(y0 + height / 2)})">` +
      `${esc(spec.yLabel)}</text>`
  );
  if (spec.legend !== false) {
    spec.series.forEach((s, i) => {
      const ly = y0 + 16 + 18 * i;
      const lx = x0 + width - 150;
      const dash = s.dashed ? ` stroke-dasharray="6 4"` : "";
      parts.push(
        `<line x1="${fmt(lx)}" y1="${fmt(ly)}" x2="${fmt(lx + 26)}" y2="${fmt(ly)}" ` +
          `stroke="${s.color}" stroke-width="1.5"${dash}/>`,
        `<text x="${fmt(lx + 32)}" y="${fmt(ly + 4)}" font-size="11">${esc(s.label)}</text>`
      );
    });
  }
  return `<g>${parts.join("")}</g>`;
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif">` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>` +
    body +
    `</svg>`
  );
}
