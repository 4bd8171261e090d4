/**
 * Eigenvalue-region figure: the convex region for odd N with the eigenvalue
 * scatter from the region CSV.  Boundary pieces: the vertical strip edges at
 * -cos^2(pi/2N) and cos(pi/N), the slanted lines Re +- Im tan(pi/N) = 1, and
 * for context the disc of radius cos(pi/N) (tangent to the slanted lines) and
 * the unit circle.
 */

import { RegionData } from "./csv";
import { fmt, LinearScale, Svg } from "./svg";

export interface RegionGeometry {
  reMin: number;
  reMax: number;
  slope: number; // tan(pi/N)
}

export function regionGeometry(n: number): RegionGeometry {
  return {
    reMin: -(Math.cos(Math.PI / (2 * n)) ** 2),
    reMax: Math.cos(Math.PI / n),
    slope: Math.tan(Math.PI / n),
  };
}

/**
 * Closed boundary of the admissible set: the strip/slant region intersected
 * with the closed unit disc (nonleading eigenvalues of a doubly stochastic
 * matrix cannot exceed modulus 1).  Pieces, counterclockwise from the lower
 * right: vertical strip edge at cos(pi/N); slanted segment tangent to the
 * disc of radius cos(pi/N) up to the unit circle; unit-circle arc; vertical
 * strip edge at -cos^2(pi/2N); then the mirror image below the axis.
 */
export function regionBoundary(n: number, arcSteps = 48): Array<[number, number]> {
  const { reMin, reMax, slope } = regionGeometry(n);
  const top = (x: number) => (1 - x) / slope;
  // the slant line Re + Im tan(pi/N) = 1 meets the unit circle at angle 2pi/N
  const meet = (2 * Math.PI) / n;
  const left = Math.atan2(Math.sqrt(1 - reMin * reMin), reMin);
  const pts: Array<[number, number]> = [];
  pts.push([reMax, -top(reMax)]);
  pts.push([reMax, top(reMax)]);
  for (let k = 0; k <= arcSteps; k++) {
    const a = meet + ((left - meet) * k) / arcSteps;
    pts.push([Math.cos(a), Math.sin(a)]);
  }
  for (let k = arcSteps; k >= 0; k--) {
    const a = meet + ((left - meet) * k) / arcSteps;
    pts.push([Math.cos(a), -Math.sin(a)]);
  }
  return pts;
}

export function pointInRegion(n: number, re: number, im: number, tol = 1e-9): boolean {
  const { reMin, reMax, slope } = regionGeometry(n);
  return (
    re >= reMin - tol &&
    re <= reMax + tol &&
    re + Math.abs(im) * slope <= 1 + tol &&
    re * re + im * im <= 1 + tol
  );
}

function circlePath(svg: Svg, sx: LinearScale, sy: LinearScale, radius: number, style: string): void {
  const pts: Array<[number, number]> = [];
  for (let k = 0; k <= 128; k++) {
    const a = (2 * Math.PI * k) / 128;
    pts.push([sx.at(radius * Math.cos(a)), sy.at(radius * Math.sin(a))]);
  }
  svg.polyline(pts, style);
}

export function renderRegion(data: RegionData): string {
  const svg = new Svg(640, 640);
  const span = 1.15;
  const sx = new LinearScale(-span, span, 50, 590);
  const sy = new LinearScale(-span, span, 590, 50);
  const { reMin, reMax } = regionGeometry(data.n);

  // light axes through the origin
  const axis = 'stroke="#cccccc" stroke-width="1"';
  svg.line(sx.at(-span), sy.at(0), sx.at(span), sy.at(0), axis);
  svg.line(sx.at(0), sy.at(-span), sx.at(0), sy.at(span), axis);

  // unit circle for context, disc of radius cos(pi/N) tangent to the slants
  circlePath(svg, sx, sy, 1.0, 'stroke="#bbbbbb" stroke-width="1" fill="none" stroke-dasharray="4 3"');
  circlePath(svg, sx, sy, reMax, 'stroke="#7799cc" stroke-width="1" fill="none"');

  // the admissible set: strip and slants cut by the unit disc
  const poly = regionBoundary(data.n).map(
    ([x, y]) => [sx.at(x), sy.at(y)] as [number, number],
  );
  svg.polygon(poly, 'stroke="#2255aa" stroke-width="1.5" fill="#2255aa" fill-opacity="0.06"');

  // eigenvalue scatter; anything flagged outside is drawn loud
  for (const p of data.points) {
    const style = p.inRegion
      ? 'fill="#cc3333" fill-opacity="0.45" stroke="none"'
      : 'fill="none" stroke="#000000" stroke-width="2"';
    svg.circle(sx.at(p.re), sy.at(p.im), 3, style);
  }

  svg.text(30, 28, `nonleading eigenvalues, N=${data.n} (${data.points.length} points)`, 'font-size="13"');
  svg.text(
    30,
    614,
    `strip ${fmt(reMin, 4)} <= Re <= ${fmt(reMax, 4)}, slant slope tan(pi/${data.n})`,
    'font-size="11" fill="#444444"',
  );
  return svg.render();
}
