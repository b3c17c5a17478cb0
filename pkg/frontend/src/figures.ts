// SVG figures for the two sweep modes: approximation ratio vs density (one
// series per area) and vs area (one series per density, plus the dashed
// 1+eps_hat estimator).  Everything is rendered with fixed formatting so the
// same CSV always produces byte-identical files.

import { SweepRow } from "./csv.js";

const WIDTH = 640;
const HEIGHT = 440;
const MARGIN = { left: 58, right: 150, top: 36, bottom: 48 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

const fmt = (x: number) => x.toFixed(2);

interface Scale {
  (x: number): number;
}

function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return (x) => r0 + ((x - d0) / span) * (r1 - r0);
}

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / values.length;
}

function axis(
  xs: number[],
  ys: number[],
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
): string {
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`,
  );
  for (const x of xs) {
    const px = fmt(xScale(x));
    parts.push(
      `<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" stroke="black"/>`,
      `<text x="${px}" y="${y0 + 20}" text-anchor="middle" font-size="12">${x}</text>`,
    );
  }
  for (const y of ys) {
    const py = fmt(yScale(y));
    parts.push(
      `<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" stroke="black"/>`,
      `<text x="${x0 - 9}" y="${py}" text-anchor="end" dominant-baseline="middle" font-size="12">${y}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt((x0 + x1) / 2)}" y="${HEIGHT - 10}" text-anchor="middle" font-size="13">${xLabel}</text>`,
    `<text x="16" y="${fmt((y0 + y1) / 2)}" text-anchor="middle" font-size="13" transform="rotate(-90 16 ${fmt((y0 + y1) / 2)})">${yLabel}</text>`,
  );
  return parts.join("\n");
}

function yTicks(maxY: number): number[] {
  const step = maxY > 10 ? 5 : maxY > 4 ? 2 : 1;
  const ticks: number[] = [];
  for (let y = 0; y <= maxY; y += step) ticks.push(y);
  return ticks;
}

function svgDocument(title: string, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="22" text-anchor="middle" font-size="15">${title}</text>`,
    body,
    `</svg>`,
    ``,
  ].join("\n");
}

// Figure (a): alpha vs density, one series per area (log-spaced densities).
export function densityFigure(rows: SweepRow[]): string {
  const areas = uniqueSorted(rows.map((r) => r.area));
  const densities = uniqueSorted(rows.map((r) => r.density));
  const maxAlpha = Math.max(...rows.map((r) => r.alpha));
  const xScale = linearScale(
    [Math.log10(densities[0]), Math.log10(densities[densities.length - 1])],
    [MARGIN.left + 16, WIDTH - MARGIN.right - 16],
  );
  const yScale = linearScale(
    [0, Math.ceil(maxAlpha) + 1],
    [HEIGHT - MARGIN.bottom, MARGIN.top],
  );
  const px = (d: number) => fmt(xScale(Math.log10(d)));

  const parts: string[] = [];
  parts.push(
    axis(
      [],
      yTicks(Math.ceil(maxAlpha) + 1),
      xScale,
      yScale,
      "node density (nodes per unit area, log spacing)",
      "approximation ratio α",
    ),
  );
  for (const d of densities) {
    parts.push(
      `<text x="${px(d)}" y="${HEIGHT - MARGIN.bottom + 20}" text-anchor="middle" font-size="12">${d}</text>`,
    );
  }
  areas.forEach((area, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts: string[] = [];
    for (const d of densities) {
      const cell = rows.filter((r) => r.area === area && r.density === d);
      if (cell.length === 0) continue;
      for (const r of cell) {
        parts.push(
          `<circle cx="${px(d)}" cy="${fmt(yScale(r.alpha))}" r="2.5" fill="${color}" fill-opacity="0.45"/>`,
        );
      }
      pts.push(`${px(d)},${fmt(yScale(mean(cell.map((r) => r.alpha))))}`);
    }
    parts.push(
      `<polyline points="${pts.join(" ")}" fill="none" stroke="${color}" stroke-width="1.8"/>`,
    );
    const ly = MARGIN.top + 14 + i * 18;
    parts.push(
      `<line x1="${WIDTH - MARGIN.right + 12}" y1="${ly}" x2="${WIDTH - MARGIN.right + 34}" y2="${ly}" stroke="${color}" stroke-width="1.8"/>`,
      `<text x="${WIDTH - MARGIN.right + 40}" y="${ly + 4}" font-size="12">area ${area}</text>`,
    );
  });
  return svgDocument("Approximation ratio for increasing node density", parts.join("\n"));
}

// Figure (b): alpha vs area per density, plus the dashed 1+eps_hat estimator.
// Cells whose eps_hat is condition-violated are skipped and reported in notes.
export function areaFigure(rows: SweepRow[]): { svg: string; notes: string[] } {
  const densities = uniqueSorted(rows.map((r) => r.density));
  const areas = uniqueSorted(rows.map((r) => r.area));
  const definedEps = rows
    .filter((r) => r.epsilonHat !== null)
    .map((r) => 1 + (r.epsilonHat as number));
  const maxY = Math.max(...rows.map((r) => r.alpha), ...definedEps, 1);
  const xScale = linearScale(
    [areas[0], areas[areas.length - 1]],
    [MARGIN.left + 24, WIDTH - MARGIN.right - 24],
  );
  const yScale = linearScale(
    [0, Math.ceil(maxY) + 1],
    [HEIGHT - MARGIN.bottom, MARGIN.top],
  );

  const notes: string[] = [];
  const parts: string[] = [];
  parts.push(
    axis(
      areas,
      yTicks(Math.ceil(maxY) + 1),
      xScale,
      yScale,
      "deployment area (square units)",
      "approximation ratio α and estimator 1+ε̂",
    ),
  );
  densities.forEach((density, i) => {
    const color = PALETTE[i % PALETTE.length];
    const alphaPts: string[] = [];
    const epsPts: string[] = [];
    for (const area of areas) {
      const cell = rows.filter((r) => r.area === area && r.density === density);
      if (cell.length === 0) continue;
      for (const r of cell) {
        parts.push(
          `<circle cx="${fmt(xScale(area))}" cy="${fmt(yScale(r.alpha))}" r="2.5" fill="${color}" fill-opacity="0.45"/>`,
        );
      }
      alphaPts.push(
        `${fmt(xScale(area))},${fmt(yScale(mean(cell.map((r) => r.alpha))))}`,
      );
      const eps = cell.filter((r) => r.epsilonHat !== null);
      const skipped = cell.length - eps.length;
      if (skipped > 0) {
        notes.push(
          `skipping ${skipped} condition-violated eps_hat value(s) at area=${area}, density=${density}`,
        );
      }
      if (eps.length > 0) {
        epsPts.push(
          `${fmt(xScale(area))},${fmt(yScale(1 + mean(eps.map((r) => r.epsilonHat as number))))}`,
        );
      }
    }
    parts.push(
      `<polyline points="${alphaPts.join(" ")}" fill="none" stroke="${color}" stroke-width="1.8"/>`,
    );
    if (epsPts.length > 0) {
      parts.push(
        `<polyline points="${epsPts.join(" ")}" fill="none" stroke="${color}" stroke-width="1.5" stroke-dasharray="6 4"/>`,
      );
    }
    const ly = MARGIN.top + 14 + i * 34;
    parts.push(
      `<line x1="${WIDTH - MARGIN.right + 12}" y1="${ly}" x2="${WIDTH - MARGIN.right + 34}" y2="${ly}" stroke="${color}" stroke-width="1.8"/>`,
      `<text x="${WIDTH - MARGIN.right + 40}" y="${ly + 4}" font-size="12">α, density ${density}</text>`,
      `<line x1="${WIDTH - MARGIN.right + 12}" y1="${ly + 16}" x2="${WIDTH - MARGIN.right + 34}" y2="${ly + 16}" stroke="${color}" stroke-width="1.5" stroke-dasharray="6 4"/>`,
      `<text x="${WIDTH - MARGIN.right + 40}" y="${ly + 20}" font-size="12">1+ε̂, density ${density}</text>`,
    );
  });
  return {
    svg: svgDocument("Approximation ratio for increasing area size", parts.join("\n")),
    notes,
  };
}
