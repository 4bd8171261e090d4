/**
 * Worst-rate-vs-N figure: searched values as markers on top of the
 * closed-form curves carried in the survey CSV itself (strategy=closed_form
 * rows), one colour per (m, signature) series.
 */

import { SurveyRow } from "./csv";
import { frame, Svg } from "./svg";

const COLORS = ["#cc3333", "#2255aa", "#228833", "#aa7722", "#7733aa", "#117788"];

function seriesKey(row: SurveyRow): string {
  return `m=${row.m} ${row.signature}`;
}

export function renderRates(rows: SurveyRow[]): string {
  const svg = new Svg(720, 480);
  if (rows.length === 0) {
    frame(svg, [0, 1], [0, 1], 50, "N", "worst rate");
    svg.text(360, 240, "empty survey", 'font-size="13" text-anchor="middle" fill="#888888"');
    return svg.render();
  }
  const ns = rows.map((r) => r.n);
  const xDomain: [number, number] = [Math.min(...ns) - 0.5, Math.max(...ns) + 0.5];
  const { x, y } = frame(svg, xDomain, [0, 1.05], 50, "N", "worst rate");

  const keys = [...new Set(rows.map(seriesKey))].sort();
  keys.forEach((key, i) => {
    const color = COLORS[i % COLORS.length];
    const mine = rows.filter((r) => seriesKey(r) === key);
    const formula = mine
      .filter((r) => r.strategy === "closed_form")
      .sort((a, b) => a.n - b.n);
    const searched = mine.filter((r) => r.strategy !== "closed_form");
    if (formula.length > 1) {
      svg.polyline(
        formula.map((r) => [x.at(r.n), y.at(r.value)] as [number, number]),
        `stroke="${color}" stroke-width="1.5" fill="none"`,
      );
    }
    for (const r of searched) {
      svg.circle(x.at(r.n), y.at(r.value), 4, `fill="none" stroke="${color}" stroke-width="1.5"`);
    }
    svg.text(svg.width - 160, 30 + 16 * i, key, `font-size="11" fill="${color}"`);
  });
  svg.text(30, 24, "worst mixing rate over exchanges: search (circles) vs closed form (lines)", 'font-size="13"');
  return svg.render();
}
