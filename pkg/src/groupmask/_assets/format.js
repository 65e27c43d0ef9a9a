// Number formatting and slider-range helpers (pure functions).
/**
 * Round half away from zero at 4 decimal places and render with a fixed
 * width, e.g. 0.00295 -> "0.0030", -0.0000177 -> "-0.0000".
 *
 * Every number shown in the UI goes through this, so what is on screen is
 * always the service payload after display rounding and nothing else.
 */
export function fixed4(value) {
    const rounded = Math.sign(value) * Math.floor(Math.abs(value) * 1e4 + 0.5) / 1e4;
    const text = Math.abs(rounded).toFixed(4);
    return (value < 0 ? "-" : "") + text;
}
/**
 * Symmetric slider bounds scaled to 3x the largest coefficient magnitude,
 * so typical edits stay in a usable range whatever the signal's scale.
 */
export function sliderRange(coefficients) {
    const peak = Math.max(...coefficients.map(Math.abs), 1e-12);
    const limit = 3 * peak;
    return { min: -limit, max: limit, step: limit / 300 };
}
/**
 * 1-based positions of the `top` largest values, ties broken by the lower
 * position (matches the service's extremum ordering).
 */
export function extremumPositions(values, top) {
    return values
        .map((value, i) => ({ value, position: i + 1 }))
        .sort((a, b) => b.value - a.value || a.position - b.position)
        .slice(0, Math.max(0, top))
        .map((entry) => entry.position);
}
