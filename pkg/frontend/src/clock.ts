/** Event timestamps: wall clock for real use, a counter for scripted runs. */

export type Clock = () => string;

/** Second-resolution UTC stamp like 2026-03-01T10:00:00Z. */
export const realClock: Clock = () =>
  new Date().toISOString().replace(/\.\d{3}Z$/, "Z");

/**
 * Deterministic stamps 10:00:00Z, 10:00:01Z, ... on a fixed date, matching
 * the scripted drivers behind the golden replay fixtures.
 */
export function sequenceClock(date = "2026-03-01"): Clock {
  let n = 0;
  return () => {
    const minutes = Math.floor(n / 60);
    const seconds = n % 60;
    n += 1;
    const mm = String(minutes).padStart(2, "0");
    const ss = String(seconds).padStart(2, "0");
    return `${date}T10:${mm}:${ss}Z`;
  };
}
