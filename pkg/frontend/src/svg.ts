/** Minimal SVG construction helpers: a linear scale, axes with ticks,
 * and element builders returning markup strings. */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number],
                            range: [number, number]): Scale {
  let [d0, d1] = domain;
  if (d0 === d1) {
    d0 -= 0.5;
    d1 += 0.5;
  }
  const k = (range[1] - range[0]) / (d1 - d0);
  const fn = ((value: number) => range[0] + (value - d0) * k) as Scale;
  fn.domain = [d0, d1];
  fn.range = range;
  return fn;
}

export function fmt(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  const rounded = Math.round(value * 100) / 100;
  return String(rounded);
}

export function ticks(lo: number, hi: number, count = 6): number[] {
  if (lo === hi) return [lo];
  const step = Math.pow(10, Math.floor(Math.log10((hi - lo) / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => (hi - lo) / s <= count) ?? 10 * step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12; v += chosen) {
    out.push(Math.abs(v) < 1e-12 ? 0 : v);
  }
  return out;
}

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function line(x1: number, y1: number, x2: number, y2: number,
                     stroke: string, width = 1, opacity = 1): string {
  return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}"` +
    ` stroke="${stroke}" stroke-width="${width}"` +
    (opacity < 1 ? ` stroke-opacity="${opacity}"` : "") + "/>";
}

export function circle(cx: number, cy: number, r: number,
                       fill: string): string {
  return `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${r}" fill="${fill}"/>`;
}

export function rect(x: number, y: number, w: number, h: number,
                     fill: string): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" ` +
    `height="${fmt(h)}" fill="${fill}"/>`;
}

export function text(x: number, y: number, content: string, size = 11,
                     anchor = "start", fill = "#222"): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" ` +
    `text-anchor="${anchor}" fill="${fill}" ` +
    `font-family="sans-serif">${esc(content)}</text>`;
}

export function polyline(points: [number, number][], stroke: string,
                         width = 1.5): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${pts}" fill="none" stroke="${stroke}" ` +
    `stroke-width="${width}"/>`;
}

/** Bottom and left axes with tick marks and labels. */
export function axes(xs: Scale, ys: Scale, xLabel: string,
                     yLabel: string): string {
  const parts: string[] = [];
  const [x0, x1] = xs.range;
  const [y0, y1] = ys.range; // y0 is the bottom (larger pixel value)
  parts.push(line(x0, y0, x1, y0, "#222"));
  parts.push(line(x0, y0, x0, y1, "#222"));
  for (const v of ticks(xs.domain[0], xs.domain[1])) {
    const px = xs(v);
    parts.push(line(px, y0, px, y0 + 4, "#222"));
    parts.push(text(px, y0 + 16, fmt(v), 10, "middle"));
  }
  for (const v of ticks(ys.domain[0], ys.domain[1])) {
    const py = ys(v);
    parts.push(line(x0 - 4, py, x0, py, "#222"));
    parts.push(text(x0 - 6, py + 3, fmt(v), 10, "end"));
  }
  parts.push(text((x0 + x1) / 2, y0 + 32, xLabel, 12, "middle"));
  parts.push(`<g transform="rotate(-90 14 ${(y0 + y1) / 2})">` +
    text(14, (y0 + y1) / 2, yLabel, 12, "middle") + "</g>");
  return parts.join("\n");
}

export function document(width: number, height: number,
                         body: string): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body + "\n</svg>\n";
}
