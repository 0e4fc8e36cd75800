/**
 * Canonical number formatting for URL fragments and request queries.
 *
 * Values are held at 9 significant digits, mirroring the wire format of the
 * fiber service.  Snapping state values to this grid when they enter the
 * state makes fragment encoding lossless: decode(encode(state)) returns
 * bit-identical numbers, so the derived request set is reproduced exactly.
 */

/** Round to 9 significant digits (the precision used on the wire). */
export function snap9(v: number): number {
  if (!Number.isFinite(v)) {
    throw new Error(`cannot snap non-finite value ${v}`);
  }
  if (v === 0) {
    return 0;
  }
  return Number(v.toPrecision(9));
}

/** Format a snapped value compactly: no trailing zeros, no negative zero. */
export function fmtNum(v: number): string {
  if (!Number.isFinite(v)) {
    throw new Error(`cannot format non-finite value ${v}`);
  }
  if (v === 0) {
    return "0";
  }
  let s = v.toPrecision(9);
  if (s.includes("e") || s.includes("E")) {
    // Trim the mantissa inside exponent notation: 1.00000000e-17 -> 1e-17.
    const [mant = "", exp = ""] = s.split(/[eE]/);
    let m = mant;
    if (m.includes(".")) {
      m = m.replace(/0+$/, "").replace(/\.$/, "");
    }
    s = `${m}e${exp.replace("+", "")}`;
  } else if (s.includes(".")) {
    s = s.replace(/0+$/, "").replace(/\.$/, "");
  }
  return s;
}

/** Parse a fragment/query number, rejecting junk instead of yielding NaN. */
export function parseNum(s: string): number {
  if (!/^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$/.test(s.trim())) {
    throw new Error(`malformed number ${JSON.stringify(s)}`);
  }
  return Number(s);
}
