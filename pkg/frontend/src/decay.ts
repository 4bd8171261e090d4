/**
 * Correlation-decay figure: |C(n)| on a log scale, exact values as a line
 * with dots, Monte Carlo estimates as crosses with 2-sigma bars, and the
 * fitted rate from the CSV header annotated as a reference slope.
 */

import { DecayData } from "./csv";
import { fmt, frame, Svg } from "./svg";

const FLOOR = 1e-16;

export function renderDecay(data: DecayData): string {
  const svg = new Svg(720, 480);
  const usable = data.rows.filter((r) => Math.abs(r.exact) > FLOOR);
  if (usable.length === 0) {
    frame(svg, [0, 1], [-16, 0], 56, "n", "log10 |C(n)|");
    svg.text(360, 240, "all correlations at noise level", 'font-size="13" text-anchor="middle" fill="#888888"');
    return svg.render();
  }
  const ns = data.rows.map((r) => r.n);
  const logs = usable.map((r) => Math.log10(Math.abs(r.exact)));
  const yLo = Math.floor(Math.min(...logs)) - 1;
  const yHi = Math.ceil(Math.max(...logs)) + 1;
  const { x, y } = frame(
    svg,
    [Math.min(...ns), Math.max(...ns)],
    [yLo, yHi],
    56,
    "n",
    "log10 |C(n)|",
  );

  svg.polyline(
    usable.map((r) => [x.at(r.n), y.at(Math.log10(Math.abs(r.exact)))] as [number, number]),
    'stroke="#2255aa" stroke-width="1.5" fill="none"',
  );
  for (const r of usable) {
    svg.circle(x.at(r.n), y.at(Math.log10(Math.abs(r.exact))), 3, 'fill="#2255aa" stroke="none"');
  }
  for (const r of data.rows) {
    if (Math.abs(r.mc) <= FLOOR) continue;
    const px = x.at(r.n);
    const py = y.at(Math.log10(Math.abs(r.mc)));
    svg.cross(px, py, 4, 'stroke="#cc3333" stroke-width="1.2"');
    const hi = Math.abs(r.mc) + 2 * r.mcSe;
    const lo = Math.max(Math.abs(r.mc) - 2 * r.mcSe, FLOOR);
    svg.line(px, y.at(Math.log10(hi)), px, y.at(Math.log10(lo)), 'stroke="#cc3333" stroke-width="0.8"');
  }

  if (data.fittedRate !== null && data.fittedRate > 0 && usable.length > 1) {
    const first = usable[0];
    const slope = Math.log10(data.fittedRate);
    const start = Math.log10(Math.abs(first.exact));
    const endN = Math.max(...ns);
    svg.line(
      x.at(first.n),
      y.at(start),
      x.at(endN),
      y.at(start + slope * (endN - first.n)),
      'stroke="#228833" stroke-width="1" stroke-dasharray="5 4"',
    );
    svg.text(svg.width - 230, 30, `fitted rate ${fmt(data.fittedRate, 6)}`, 'font-size="11" fill="#228833"');
  }
  svg.text(30, 24, `correlation decay: ${data.description}`, 'font-size="13"');
  svg.text(svg.width - 230, 46, "exact (dots), Monte Carlo (crosses)", 'font-size="11" fill="#555555"');
  return svg.render();
}
