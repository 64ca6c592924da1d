//! Independent reference implementation of the default skin rule, written
//! in exact integer arithmetic. Shares no code with the library.

#![allow(dead_code)]

/// Channel minima, gap and alpha floor of the default rule.
pub fn naive_rgb(r: i64, g: i64, b: i64, a: i64) -> bool {
    r > 95 && g > 40 && b > 20 && r > g && r > b && (r - g).abs() > 15 && a > 15
}

/// `0 <= H <= 50` degrees and `0.23 <= S <= 0.68`, decided on rationals.
pub fn naive_hsv(r: i64, g: i64, b: i64) -> bool {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    if max == 0 {
        // s = 0
        return false;
    }
    let d = max - min;
    let sat_ok = 100 * d >= 23 * max && 100 * d <= 68 * max;
    // Hue in [0, 50] only in the red sector with G >= B, where
    // H = 60 (G - B) / d. Gray (d = 0) has H = 0 by convention.
    let hue_ok = d == 0 || (r == max && g >= b && 6 * (g - b) <= 5 * d);
    sat_ok && hue_ok
}

/// BT.601 full-range terms scaled by 10^6.
pub fn digital_scaled(r: i64, g: i64, b: i64) -> (i128, i128, i128) {
    let y = 299_000 * r + 587_000 * g + 114_000 * b;
    let cb = 128_000_000 - 168_736 * r - 331_264 * g + 500_000 * b;
    let cr = 128_000_000 + 500_000 * r - 418_688 * g - 81_312 * b;
    (y as i128, cb as i128, cr as i128)
}

pub fn naive_ycbcr(r: i64, g: i64, b: i64) -> bool {
    let (y, cb, cr) = digital_scaled(r, g, b);
    const M: i128 = 1_000_000;
    cr > 135 * M
        && cb > 85 * M
        && y > 80 * M
        // Cr <= 1.5862 Cb + 20
        && 10_000 * cr <= 15_862 * cb + 200_000 * M
        // Cr >= 0.3448 Cb + 76.2069
        && 10_000 * cr >= 3_448 * cb + 762_069 * M
        // Cr >= -4.5652 Cb + 234.5652
        && 10_000 * cr >= -45_652 * cb + 2_345_652 * M
        // Cr <= -1.15 Cb + 301.75
        && 100 * cr <= -115 * cb + 30_175 * M
        // Cr <= -2.2857 Cb + 432.85
        && 10_000 * cr <= -22_857 * cb + 4_328_500 * M
}

pub fn naive_is_skin(r: u8, g: u8, b: u8, a: u8) -> bool {
    let (r, g, b, a) = (r as i64, g as i64, b as i64, a as i64);
    naive_rgb(r, g, b, a) && (naive_hsv(r, g, b) || naive_ycbcr(r, g, b))
}

/// The printed equations evaluated term by term in f64.
pub fn literal_ycbcr(r: u8, g: u8, b: u8) -> (f64, f64, f64) {
    let (r, g, b) = (r as f64, g as f64, b as f64);
    let y = 0.299 * r + 0.287 * g + 0.11 * b;
    (y, b - y, r - y)
}

/// The BT.601 matrix evaluated term by term in f64.
pub fn matrix_ycbcr(r: u8, g: u8, b: u8) -> (f64, f64, f64) {
    let (r, g, b) = (r as f64, g as f64, b as f64);
    (
        0.299 * r + 0.587 * g + 0.114 * b,
        128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b,
        128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b,
    )
}

/// Textbook hexcone HSV on [0, 1] channels.
pub fn textbook_hsv(r: u8, g: u8, b: u8) -> (f64, f64, f64) {
    let (r, g, b) = (r as f64 / 255.0, g as f64 / 255.0, b as f64 / 255.0);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let d = max - min;
    let s = if max == 0.0 { 0.0 } else { d / max };
    let h = if d == 0.0 {
        0.0
    } else if max == r {
        (60.0 * ((g - b) / d)).rem_euclid(360.0)
    } else if max == g {
        60.0 * ((b - r) / d) + 120.0
    } else {
        60.0 * ((r - g) / d) + 240.0
    };
    (h, s, max)
}
