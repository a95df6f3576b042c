/**
 * Multi-series SVG line chart, one series per distinct sigma.
 *
 * This is a pure view: the data layer (`buildSeries`) carries the CSV
 * values untouched, and rendering applies only coordinate scaling.  The
 * same chart serves any sweep with the `x,sigma,value` schema.
 */

import type { SweepRow } from './csv.js';

export interface SeriesPoint {
  x: number;
  y: number;
}

export interface Series {
  sigma: number;
  points: SeriesPoint[];
}

export interface ChartOptions {
  width?: number;
  height?: number;
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b', '#17becf'];

/** Group rows by sigma (ascending); row order within a series is preserved. */
export function buildSeries(rows: SweepRow[]): Series[] {
  const groups = new Map<number, SeriesPoint[]>();
  for (const row of rows) {
    const points = groups.get(row.sigma) ?? [];
    points.push({ x: row.x, y: row.value });
    groups.set(row.sigma, points);
  }
  return [...groups.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([sigma, points]) => ({ sigma, points }));
}

function formatTick(v: number): string {
  return String(Number(v.toPrecision(4)));
}

export function renderLineChart(series: Series[], options: ChartOptions = {}): string {
  if (series.length === 0) {
    throw new Error('nothing to plot');
  }
  const { width = 760, height = 480, title = '', xLabel = 'x', yLabel = 'value' } = options;
  const margin = { top: 44, right: 132, bottom: 56, left: 76 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  const all = series.flatMap((s) => s.points);
  let xMin = Math.min(...all.map((p) => p.x));
  let xMax = Math.max(...all.map((p) => p.x));
  let yMin = Math.min(...all.map((p) => p.y));
  let yMax = Math.max(...all.map((p) => p.y));
  if (xMax === xMin) {
    xMin -= 0.5;
    xMax += 0.5;
  }
  if (yMax === yMin) {
    yMin -= 0.5;
    yMax += 0.5;
  }
  const pad = 0.04 * (yMax - yMin);
  yMin -= pad;
  yMax += pad;

  const sx = (x: number) => margin.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const sy = (y: number) => margin.top + plotH - ((y - yMin) / (yMax - yMin)) * plotH;

  const grid: string[] = [];
  const ticks = 5;
  for (let i = 0; i <= ticks; i++) {
    const xv = xMin + ((xMax - xMin) * i) / ticks;
    const yv = yMin + ((yMax - yMin) * i) / ticks;
    const gx = sx(xv);
    const gy = sy(yv);
    grid.push(
      `<line x1="${gx}" y1="${margin.top}" x2="${gx}" y2="${margin.top + plotH}" stroke="#e4e4e4"/>`,
      `<text x="${gx}" y="${margin.top + plotH + 20}" text-anchor="middle" font-size="12" fill="#555">${formatTick(xv)}</text>`,
      `<line x1="${margin.left}" y1="${gy}" x2="${margin.left + plotW}" y2="${gy}" stroke="#e4e4e4"/>`,
      `<text x="${margin.left - 8}" y="${gy + 4}" text-anchor="end" font-size="12" fill="#555">${formatTick(yv)}</text>`,
    );
  }

  const layers: string[] = [];
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    if (s.points.length >= 2) {
      const pts = s.points.map((p) => `${sx(p.x)},${sy(p.y)}`).join(' ');
      layers.push(`<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="2"/>`);
    }
    for (const p of s.points) {
      layers.push(`<circle cx="${sx(p.x)}" cy="${sy(p.y)}" r="3" fill="${color}"/>`);
    }
  });

  const legend = series
    .map((s, i) => {
      const y = margin.top + 8 + i * 22;
      const color = PALETTE[i % PALETTE.length];
      return (
        `<rect x="${width - margin.right + 14}" y="${y - 5}" width="18" height="4" fill="${color}"/>` +
        `<text x="${width - margin.right + 38}" y="${y}" font-size="12" fill="#333">sigma = ${s.sigma}</text>`
      );
    })
    .join('\n  ');

  return `<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">
  <rect width="${width}" height="${height}" fill="white"/>
  ${title ? `<text x="${width / 2}" y="26" text-anchor="middle" font-size="16" fill="#222">${title}</text>` : ''}
  ${grid.join('\n  ')}
  <line x1="${margin.left}" y1="${margin.top + plotH}" x2="${margin.left + plotW}" y2="${margin.top + plotH}" stroke="#222" stroke-width="1.5"/>
  <line x1="${margin.left}" y1="${margin.top}" x2="${margin.left}" y2="${margin.top + plotH}" stroke="#222" stroke-width="1.5"/>
  <text x="${margin.left + plotW / 2}" y="${height - 14}" text-anchor="middle" font-size="13" fill="#222">${xLabel}</text>
  <text x="22" y="${margin.top + plotH / 2}" text-anchor="middle" font-size="13" fill="#222" transform="rotate(-90, 22, ${margin.top + plotH / 2})">${yLabel}</text>
  ${layers.join('\n  ')}
  ${legend}
</svg>
`;
}
