import { SchemaMismatch, Table, requireColumn } from "./csv";
import { Series, panel, seriesColor, svgDocument } from "./svg";

export type Field = "abs" | "re" | "im";

const PREFIX: Record<Field, string> = {
  abs: "abs_r_sq_",
  re: "re_r_",
  im: "im_r_",
};

const YLABEL: Record<Field, string> = {
  abs: "|R|^2",
  re: "Re R",
  im: "Im R",
};

export function seriesNames(table: Table, field: Field): string[] {
  return table.header.filter((h) => h.startsWith(PREFIX[field]));
}

/** Decode a column tag like dw4p5 / d0p3 / n1 into a legend label. */
export function tagLabel(tag: string): string {
  if (tag === "n1") return "single mode";
  const num = (body: string) => body.replace(/p/g, ".").replace(/m/g, "-");
  if (tag.startsWith("dw")) return `splitting ${num(tag.slice(2))}`;
  if (tag.startsWith("d")) return `detuning ${num(tag.slice(1))}`;
  return tag;
}

export function spectrumSvg(table: Table, field: Field = "abs"): string {
  const x = requireColumn(table, "omega_rel_gamma");
  const names = seriesNames(table, field);
  if (names.length === 0) {
    throw new SchemaMismatch(`no ${PREFIX[field]}* columns; not a spectrum table`);
  }
  const series: Series[] = names.map((name, i) => ({
    label: tagLabel(name.slice(PREFIX[field].length)),
    x,
    y: table.columns.get(name) as Float64Array,
    color: seriesColor(i),
    dashed: name.endsWith("_n1"),
  }));
  const body = panel({
    x0: 70,
    y0: 20,
    width: 600,
    height: 380,
    xLabel: "probe offset from the sideband (damping units)",
    yLabel: YLABEL[field],
    series,
  });
  return svgDocument(720, 470, body);
}
