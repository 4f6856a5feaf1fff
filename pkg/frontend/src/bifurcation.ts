import { SchemaMismatch, Table, requireColumn } from "./csv";
import { Series, panel, seriesColor, svgDocument } from "./svg";
import { tagLabel } from "./spectrum";

/** One detuning's pair of collective-root trajectories, in damping units. */
export interface RootGroup {
  tag: string;
  rePlus: Float64Array;
  imPlus: Float64Array;
  reMinus: Float64Array;
  imMinus: Float64Array;
}

export function rootGroups(table: Table): RootGroup[] {
  const groups: RootGroup[] = [];
  for (const h of table.header) {
    const m = /^re_wp_(?!rad_s_)(.+)$/.exec(h);
    if (!m) continue;
    const tag = m[1];
    groups.push({
      tag,
      rePlus: requireColumn(table, `re_wp_${tag}`),
      imPlus: requireColumn(table, `im_wp_${tag}`),
      reMinus: requireColumn(table, `re_wm_${tag}`),
      imMinus: requireColumn(table, `im_wm_${tag}`),
    });
  }
  if (groups.length === 0) {
    throw new SchemaMismatch("no re_wp_*/re_wm_* columns; not a root-trajectory table");
  }
  return groups;
}

/** Smallest complex distance between the two roots across the scan. */
export function minSeparation(group: RootGroup): number {
  let best = Infinity;
  for (let i = 0; i < group.rePlus.length; i++) {
    const d = Math.hypot(
      group.rePlus[i] - group.reMinus[i],
      group.imPlus[i] - group.imMinus[i]
    );
    if (d < best) best = d;
  }
  return best;
}

function isResonant(tag: string): boolean {
  return Number(tag.slice(1).replace(/p/g, ".").replace(/m/g, "-")) === 0;
}

export function bifurcationSvg(table: Table): string {
  const x = requireColumn(table, "delta_omega_over_gamma");
  const groups = rootGroups(table);
  const mkSeries = (pick: (g: RootGroup) => [Float64Array, Float64Array]): Series[] =>
    groups.flatMap((g, i) => {
      const [a, b] = pick(g);
      const dashed = !isResonant(g.tag);
      return [
        { label: `${tagLabel(g.tag)}, upper`, x, y: a, color: seriesColor(i), dashed },
        { label: `${tagLabel(g.tag)}, lower`, x, y: b, color: seriesColor(i), dashed },
      ];
    });
  const top = panel({
    x0: 80,
    y0: 20,
    width: 580,
    height: 260,
    xLabel: "",
    yLabel: "Re root (damping units)",
    series: mkSeries((g) => [g.rePlus, g.reMinus]),
  });
  const bottom = panel({
    x0: 80,
    y0: 330,
    width: 580,
    height: 260,
    xLabel: "mode splitting (damping units)",
    yLabel: "Im root (damping units)",
    series: mkSeries((g) => [g.imPlus, g.imMinus]),
    legend: false,
  });
  return svgDocument(720, 650, top + bottom);
}
