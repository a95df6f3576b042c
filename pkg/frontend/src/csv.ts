/**
 * Strict parser for the sweep CSV interface: header `x,sigma,value`,
 * one numeric triple per line, LF separated.
 */

export interface SweepRow {
  x: number;
  sigma: number;
  value: number;
}

export class CsvFormatError extends Error {}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split('\n');
  if (lines.length > 0 && lines[lines.length - 1] === '') {
    lines.pop(); // trailing newline
  }
  if (lines.length === 0) {
    throw new CsvFormatError('empty input');
  }
  if (lines[0] !== 'x,sigma,value') {
    throw new CsvFormatError(`expected header "x,sigma,value", got "${lines[0]}"`);
  }
  if (lines.length === 1) {
    throw new CsvFormatError('no data rows');
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(',');
    if (cells.length !== 3) {
      throw new CsvFormatError(`row ${i + 1}: expected 3 cells, got ${cells.length}`);
    }
    const [x, sigma, value] = cells.map(Number);
    if (![x, sigma, value].every(Number.isFinite) || cells.some((c) => c.trim() === '')) {
      throw new CsvFormatError(`row ${i + 1}: non-numeric cell in "${lines[i]}"`);
    }
    rows.push({ x, sigma, value });
  }
  return rows;
}
