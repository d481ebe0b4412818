/**
 * Fixed 4-band color ramp.  Must stay identical to the ramp the export
 * module writes into feature properties; feature colors win when present
 * and this table backs the legend and any feature missing one.
 */

export const BAND_COLORS: Record<string, string> = {
  Low: '#d73027',
  Moderate: '#fdae61',
  Good: '#a6d96a',
  Satisfied: '#1a9850',
};

export const MISSING_COLOR = '#999999';

export function colorForBand(band: string | null): string {
  if (band === null) {
    return MISSING_COLOR;
  }
  return BAND_COLORS[band] ?? MISSING_COLOR;
}
