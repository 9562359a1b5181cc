/** Exact handling of the server's "n" / "n/d" rational strings. */

export interface Rational {
  num: bigint;
  den: bigint;
}

const FRACTION_RE = /^(-?\d+)(?:\/(\d+))$|^(-?\d+)$/;

export function parseFraction(text: string): Rational {
  const m = FRACTION_RE.exec(text.trim());
  if (!m) throw new Error(`not a fraction: ${JSON.stringify(text)}`);
  if (m[3] !== undefined) return { num: BigInt(m[3]), den: 1n };
  const den = BigInt(m[2]!);
  if (den === 0n) throw new Error(`zero denominator: ${JSON.stringify(text)}`);
  return { num: BigInt(m[1]!), den };
}

/** -1, 0 or 1 without leaving exact arithmetic. */
export function compareFractions(a: string, b: string): -1 | 0 | 1 {
  const x = parseFraction(a);
  const y = parseFraction(b);
  const lhs = x.num * y.den;
  const rhs = y.num * x.den;
  return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

/** Float projection for chart placement only, never for decisions. */
export function fractionToNumber(text: string): number {
  const { num, den } = parseFraction(text);
  return Number(num) / Number(den);
}

/** Short display form: the fraction plus a rounded decimal hint. */
export function displayFraction(text: string, digits = 3): string {
  const value = fractionToNumber(text);
  const rounded = value.toFixed(digits).replace(/\.?0+$/, "") || "0";
  return text.includes("/") ? `${text} (≈ ${rounded})` : text;
}

function gcd(a: bigint, b: bigint): bigint {
  let x = a < 0n ? -a : a;
  let y = b < 0n ? -b : b;
  while (y) [x, y] = [y, x % y];
  return x;
}

export function formatRatio(num: bigint, den: bigint): string {
  if (den === 0n) throw new Error("zero denominator");
  if (den < 0n) [num, den] = [-num, -den];
  const g = gcd(num, den) || 1n;
  const n = num / g;
  const d = den / g;
  return d === 1n ? n.toString() : `${n}/${d}`;
}

/**
 * Importance weights from a card chain over the gaps between criteria,
 * least important first: each step is worth (cards + 1) units and the
 * total normalizes the column. Exact counterpart of the server-side rule
 * so the weights widget can show what a placement means before ranking.
 */
export function weightsFromGaps(gaps: number[], worstIsZero = true): string[] {
  for (const g of gaps) {
    if (!Number.isInteger(g) || g < 0) throw new Error(`bad gap count: ${g}`);
  }
  const raw: bigint[] = [worstIsZero ? 0n : 1n];
  for (const g of gaps) raw.push(raw[raw.length - 1]! + BigInt(g + 1));
  const total = raw.reduce((a, b) => a + b, 0n);
  if (total === 0n) throw new Error("all weights zero; place at least one card");
  return raw.map((r) => formatRatio(r, total));
}
