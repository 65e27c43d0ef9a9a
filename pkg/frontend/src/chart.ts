// SVG bar-chart rendering as pure string builders: easy to test, no DOM
// dependency, and the markup is identical every render for identical input.

export interface ChartSpec {
  values: number[];
  labels?: string[];
  /** 1-based bar positions to flag as extremums. */
  highlight?: number[];
  /** 1-based bar positions to badge as constraint violations. */
  violations?: number[];
  title?: string;
  width?: number;
  height?: number;
  /** Shared y-extent; defaults to the data extent. */
  scaleMax?: number;
  scaleMin?: number;
}

const MARGIN = 28;

function fmt(x: number): string {
  return x.toFixed(2);
}

export function barChartSvg(spec: ChartSpec): string {
  const { values } = spec;
  if (values.length === 0) throw new Error("chart needs at least one value");
  const width = spec.width ?? 640;
  const height = spec.height ?? 240;
  const labels = spec.labels;
  if (labels && labels.length !== values.length) {
    throw new Error(`got ${labels.length} labels for ${values.length} bars`);
  }
  const highlight = new Set(spec.highlight ?? []);
  const violations = new Set(spec.violations ?? []);

  const top = Math.max(spec.scaleMax ?? Math.max(...values, 0), 0);
  const bottom = Math.min(spec.scaleMin ?? Math.min(...values, 0), 0);
  const span = top - bottom;
  const scale = span > 0 ? (height - 2 * MARGIN) / span : 0;
  const baseline = MARGIN + top * scale;
  const step = (width - 2 * MARGIN) / values.length;
  const barWidth = Math.max(step - 3, 1);

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
      `class="signal-chart" role="img">`,
  ];
  if (spec.title) {
    parts.push(
      `<text x="${fmt(width / 2)}" y="14" text-anchor="middle" class="chart-title">` +
        `${spec.title}</text>`,
    );
  }
  parts.push(
    `<line x1="${fmt(MARGIN)}" y1="${fmt(baseline)}" x2="${fmt(width - MARGIN)}" ` +
      `y2="${fmt(baseline)}" class="chart-baseline"/>`,
  );
  values.forEach((value, i) => {
    const position = i + 1;
    const x = MARGIN + i * step + 1.5;
    const barHeight = Math.abs(value) * scale;
    const y = value >= 0 ? baseline - barHeight : baseline;
    const classes = ["bar"];
    if (value < 0) classes.push("bar-negative");
    if (highlight.has(position)) classes.push("bar-extremum");
    if (violations.has(position)) classes.push("bar-violation");
    parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(barWidth)}" ` +
        `height="${fmt(barHeight)}" class="${classes.join(" ")}" ` +
        `data-position="${position}" data-value="${value}"/>`,
    );
    const label = labels ? labels[i] : String(position);
    parts.push(
      `<text x="${fmt(x + barWidth / 2)}" y="${fmt(height - 8)}" ` +
        `text-anchor="middle" class="chart-label">${label}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}

/**
 * Index-aligned before/after charts of the difference signal on one shared
 * y-scale, so bar heights are directly comparable between the two.
 */
export function pairedSignalCharts(args: {
  before: number[];
  after: number[];
  labels: string[];
  highlightBefore: number[];
  highlightAfter: number[];
  violations: number[];
}): { before: string; after: string } {
  const scaleMax = Math.max(...args.before, ...args.after, 0);
  const scaleMin = Math.min(...args.before, ...args.after, 0);
  return {
    before: barChartSvg({
      values: args.before,
      labels: args.labels,
      highlight: args.highlightBefore,
      title: "difference (original)",
      scaleMax,
      scaleMin,
    }),
    after: barChartSvg({
      values: args.after,
      labels: args.labels,
      highlight: args.highlightAfter,
      violations: args.violations,
      title: "difference (masked)",
      scaleMax,
      scaleMin,
    }),
  };
}
