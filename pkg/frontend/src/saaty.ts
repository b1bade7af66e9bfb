/** The discrete 1-9 comparison scale offered by the cell selector. */

export interface SaatyOption {
  label: string;
  value: number;
}

const whole = [9, 8, 7, 6, 5, 4, 3, 2];

/** 17 options: 9..2, 1, 1/2..1/9 — strongest dominance first. */
export const SAATY_OPTIONS: SaatyOption[] = [
  ...whole.map((k) => ({ label: String(k), value: k })),
  { label: "1", value: 1 },
  ...[...whole].reverse().map((k) => ({ label: `1/${k}`, value: 1 / k })),
];

/** Closest selector option for an arbitrary positive value (log distance). */
export function nearestOption(value: number): SaatyOption {
  let best = SAATY_OPTIONS[8]!; // "1"
  let bestDist = Infinity;
  for (const opt of SAATY_OPTIONS) {
    const d = Math.abs(Math.log(opt.value) - Math.log(value));
    if (d < bestDist) {
      bestDist = d;
      best = opt;
    }
  }
  return best;
}

/** True when the value matches a selector option exactly (within rounding). */
export function isScaleValue(value: number): boolean {
  return Math.abs(Math.log(nearestOption(value).value) - Math.log(value)) < 1e-9;
}
