/** Axis scales and tick generation shared by both chart views. */

export interface Scale {
  map(value: number): number;
  ticks(): number[];
}

/** Round a raw step up to the nearest 1/2/5 * 10^k. */
export function niceStep(rawStep: number): number {
  const pow = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const frac = rawStep / pow;
  const nice = frac <= 1 ? 1 : frac <= 2 ? 2 : frac <= 5 ? 5 : 10;
  return nice * pow;
}

export function linearTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const step = niceStep((hi - lo) / count);
  const first = Math.ceil(lo / step - 1e-9);
  const last = Math.floor(hi / step + 1e-9);
  const out: number[] = [];
  for (let i = first; i <= last; i++) {
    // Math.ceil above yields -0 when lo is 0, and -0 * step stays -0.
    out.push(i === 0 ? 0 : i * step);
  }
  return out;
}

/** Powers of ten inside [lo, hi]. */
export function logTicks(lo: number, hi: number): number[] {
  const first = Math.ceil(Math.log10(lo) - 1e-9);
  const last = Math.floor(Math.log10(hi) + 1e-9);
  const out: number[] = [];
  for (let e = first; e <= last; e++) {
    out.push(Math.pow(10, e));
  }
  return out;
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0;
  return {
    map: (value) => r0 + ((value - d0) / span) * (r1 - r0),
    ticks: () => linearTicks(d0, d1),
  };
}

export function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const lo = Math.log10(d0);
  const span = Math.log10(d1) - lo;
  return {
    map: (value) => r0 + ((Math.log10(value) - lo) / span) * (r1 - r0),
    ticks: () => logTicks(d0, d1),
  };
}

/** Compact deterministic tick label; powers of ten from 1e4 up use e-notation. */
export function fmtTick(value: number): string {
  if (value !== 0 && Math.abs(value) >= 1e4) {
    const exp = Math.log10(Math.abs(value));
    if (Number.isInteger(exp)) {
      return `${value < 0 ? "-" : ""}1e${exp}`;
    }
  }
  return String(value);
}
