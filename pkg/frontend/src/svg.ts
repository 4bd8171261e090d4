/**
 * Tiny deterministic SVG builder: fixed-precision coordinates, no timestamps,
 * no external dependencies, so repeated renders are byte-identical.
 */

export function fmt(x: number, digits = 2): string {
  const s = x.toFixed(digits);
  return s === "-0." + "0".repeat(digits) ? s.slice(1) : s;
}

export class LinearScale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly r0: number,
    readonly r1: number,
  ) {}

  at(x: number): number {
    const t = (x - this.d0) / (this.d1 - this.d0);
    return this.r0 + t * (this.r1 - this.r0);
  }

  ticks(count = 6): number[] {
    const span = this.d1 - this.d0;
    const rawStep = span / Math.max(1, count);
    const mag = Math.pow(10, Math.floor(Math.log10(Math.abs(rawStep))));
    const norm = rawStep / mag;
    const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
    const start = Math.ceil(this.d0 / step) * step;
    const out: number[] = [];
    for (let v = start; v <= this.d1 + 1e-12; v += step) {
      out.push(Math.abs(v) < 1e-12 ? 0 : v);
    }
    return out;
  }
}

export class Svg {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
    );
    this.parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, style: string): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${style}/>`,
    );
  }

  circle(cx: number, cy: number, r: number, style: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" ${style}/>`);
  }

  polyline(points: Array<[number, number]>, style: string): void {
    const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline points="${coords}" ${style}/>`);
  }

  polygon(points: Array<[number, number]>, style: string): void {
    const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polygon points="${coords}" ${style}/>`);
  }

  text(x: number, y: number, content: string, style = ""): void {
    const safe = content
      .replace(/&/g, "&amp;")
      .replace(/</g, "&lt;")
      .replace(/>/g, "&gt;");
    this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}" ${style}>${safe}</text>`);
  }

  cross(cx: number, cy: number, r: number, style: string): void {
    this.line(cx - r, cy - r, cx + r, cy + r, style);
    this.line(cx - r, cy + r, cx + r, cy - r, style);
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

export interface Frame {
  x: LinearScale;
  y: LinearScale;
}

/** Draw plot axes with ticks; returns the scales mapping data to pixels. */
export function frame(
  svg: Svg,
  xDomain: [number, number],
  yDomain: [number, number],
  margin = 50,
  xLabel = "",
  yLabel = "",
): Frame {
  const x = new LinearScale(xDomain[0], xDomain[1], margin, svg.width - margin);
  const y = new LinearScale(yDomain[0], yDomain[1], svg.height - margin, margin);
  const axisStyle = 'stroke="black" stroke-width="1"';
  svg.line(x.r0, y.r0, x.r1, y.r0, axisStyle);
  svg.line(x.r0, y.r0, x.r0, y.r1, axisStyle);
  for (const t of x.ticks()) {
    const px = x.at(t);
    svg.line(px, y.r0, px, y.r0 + 4, axisStyle);
    svg.text(px, y.r0 + 16, fmt(t, Math.abs(t) < 10 && t % 1 !== 0 ? 2 : 0), 'font-size="10" text-anchor="middle"');
  }
  for (const t of y.ticks()) {
    const py = y.at(t);
    svg.line(x.r0 - 4, py, x.r0, py, axisStyle);
    svg.text(x.r0 - 6, py + 3, fmt(t, Math.abs(t) < 10 && t % 1 !== 0 ? 2 : 0), 'font-size="10" text-anchor="end"');
  }
  if (xLabel) svg.text((x.r0 + x.r1) / 2, svg.height - 12, xLabel, 'font-size="12" text-anchor="middle"');
  if (yLabel) svg.text(14, margin - 16, yLabel, 'font-size="12"');
  return { x, y };
}
