/**
 * CLI: render a sweep CSV to an SVG line chart.
 *
 *   node dist/main.js --input capacity_sweep.csv --output capacity_sweep.svg \
 *       --title "capacity vs correlation" --ylabel "capacity [bits]"
 */

import { readFileSync, writeFileSync } from 'node:fs';
import { parseSweepCsv } from './csv.js';
import { buildSeries, renderLineChart } from './chart.js';

export interface PlotSpec {
  input: string;
  output: string;
  title: string;
  yLabel: string;
}

export function render(spec: PlotSpec): void {
  const text = readFileSync(spec.input, 'utf-8');
  const series = buildSeries(parseSweepCsv(text));
  const svg = renderLineChart(series, {
    title: spec.title,
    xLabel: 'correlation x',
    yLabel: spec.yLabel,
  });
  writeFileSync(spec.output, svg, { encoding: 'utf-8' });
}

export function parseArgs(argv: string[]): PlotSpec {
  const spec: Partial<PlotSpec> = { title: '', yLabel: 'value [bits]' };
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new Error(`missing value for ${flag}`);
    }
    switch (flag) {
      case '--input':
        spec.input = value;
        break;
      case '--output':
        spec.output = value;
        break;
      case '--title':
        spec.title = value;
        break;
      case '--ylabel':
        spec.yLabel = value;
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!spec.input || !spec.output) {
    throw new Error('usage: --input <sweep.csv> --output <chart.svg> [--title T] [--ylabel Y]');
  }
  return spec as PlotSpec;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === new URL(`file://${process.argv[1]}`).href;

if (invokedDirectly) {
  try {
    render(parseArgs(process.argv.slice(2)));
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    process.exit(1);
  }
}
