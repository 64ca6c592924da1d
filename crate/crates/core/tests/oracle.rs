mod common;

use common::*;
use rand::{Rng, SeedableRng};
use skinmask::{
    classify_pixel, rgb_to_hsv, rgb_to_ycbcr, HsvF64, Rgba, ThresholdConfigF64, YCbCrF64, YCbCrMode,
};

fn all_rgb() -> impl Iterator<Item = (u8, u8, u8)> {
    (0..1u32 << 24).map(|v| ((v >> 16) as u8, (v >> 8) as u8, v as u8))
}

#[test]
fn every_sub_rule_matches_exact_oracle() {
    let cfg = ThresholdConfigF64::default();
    let mut counts = [0u64; 4];
    for (r, g, b) in all_rgb() {
        let d = classify_pixel(Rgba::opaque(r, g, b), &cfg);
        let (ri, gi, bi) = (r as i64, g as i64, b as i64);
        assert_eq!(d.rgb_pass, naive_rgb(ri, gi, bi, 255), "rgb ({r},{g},{b})");
        assert_eq!(d.hsv_pass, naive_hsv(ri, gi, bi), "hsv ({r},{g},{b})");
        assert_eq!(d.ycbcr_pass, naive_ycbcr(ri, gi, bi), "ycbcr ({r},{g},{b})");
        assert_eq!(d.is_skin, naive_is_skin(r, g, b, 255), "skin ({r},{g},{b})");
        counts[0] += d.is_skin as u64;
        counts[1] += d.rgb_pass as u64;
        counts[2] += d.hsv_pass as u64;
        counts[3] += d.ycbcr_pass as u64;
    }
    println!(
        "skin={} rgb={} hsv={} ycbcr={}",
        counts[0], counts[1], counts[2], counts[3]
    );
    assert!(counts[0] > 0);
}

#[test]
fn digital_ycbcr_matches_matrix_form() {
    for (r, g, b) in all_rgb() {
        let c: YCbCrF64 = rgb_to_ycbcr(Rgba::opaque(r, g, b), YCbCrMode::Digital);
        let (y, cb, cr) = matrix_ycbcr(r, g, b);
        assert!((c.y - y).abs() <= 1e-9 && (c.cb - cb).abs() <= 1e-9 && (c.cr - cr).abs() <= 1e-9);
    }
}

#[test]
fn hsv_matches_textbook_form() {
    for (r, g, b) in all_rgb() {
        let h: HsvF64 = rgb_to_hsv(Rgba::opaque(r, g, b));
        let (th, ts, tv) = textbook_hsv(r, g, b);
        assert!((h.h - th).abs() <= 1e-9, "({r},{g},{b}) {} vs {th}", h.h);
        assert!((h.s - ts).abs() <= 1e-12 && (h.v - tv).abs() <= 1e-12);
        assert!((0.0..360.0).contains(&h.h));
    }
}

#[test]
fn paper_literal_matches_printed_equations() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for _ in 0..100_000 {
        let (r, g, b) = (rng.gen(), rng.gen(), rng.gen());
        let c: YCbCrF64 = rgb_to_ycbcr(Rgba::opaque(r, g, b), YCbCrMode::PaperLiteral);
        let (y, cb, cr) = literal_ycbcr(r, g, b);
        assert!((c.y - y).abs() <= 1e-9, "({r},{g},{b})");
        assert!(
            (c.cb - cb).abs() <= 1e-9 && (c.cr - cr).abs() <= 1e-9,
            "({r},{g},{b})"
        );
        // Cr = R - Y and Cb = B - Y hold on the library's own outputs.
        assert!((c.cr - (r as f64 - c.y)).abs() <= 1e-9);
        assert!((c.cb - (b as f64 - c.y)).abs() <= 1e-9);
    }
}

#[test]
fn f32_classifier_rarely_disagrees() {
    // f32 rounds the scaled numerators, so ties may flip; it must still
    // agree almost everywhere.
    let cfg64 = ThresholdConfigF64::default();
    let cfg32 = skinmask::ThresholdConfigF32::default();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut disagree = 0;
    for _ in 0..100_000 {
        let p = Rgba::opaque(rng.gen(), rng.gen(), rng.gen());
        disagree += (classify_pixel(p, &cfg64).is_skin != classify_pixel(p, &cfg32).is_skin) as u32;
    }
    assert!(disagree <= 10, "{disagree}");
}
