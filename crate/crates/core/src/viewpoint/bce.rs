//! Binary cross-entropy mask matching.

use super::{SilhouetteMask, ViewpointError};
use crate::math;

/// Rendered coverage is clamped to `[BCE_CLAMP, 1 − BCE_CLAMP]` so the log
/// loss stays finite on hard 0/1 pixels.
pub const BCE_CLAMP: f64 = 1e-4;

/// Mean binary cross-entropy between a reference mask (binarized at 0.5) and
/// a rendered coverage mask, nats per pixel.
///
/// A rendering identical to a binary reference scores the clamp floor
/// `−ln(1 − BCE_CLAMP)`, its complement `−ln(BCE_CLAMP)`, and an all-0.5
/// rendering `ln 2` regardless of the reference.
pub fn bce_mask_loss(
    reference: &SilhouetteMask,
    rendered: &SilhouetteMask,
) -> Result<f64, ViewpointError> {
    reference.same_dims(rendered)?;
    let mut sum = 0.0;
    for (r, p) in reference.coverage().iter().zip(rendered.coverage().iter()) {
        let p = p.clamp(BCE_CLAMP, 1.0 - BCE_CLAMP);
        sum -= if *r >= 0.5 {
            math::ln(p)
        } else {
            math::ln(1.0 - p)
        };
    }
    Ok(sum / reference.coverage().len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn checker(w: u32, h: u32) -> SilhouetteMask {
        let cov: Vec<f64> = (0..w * h).map(|i| ((i / 3) % 2) as f64).collect();
        SilhouetteMask::new(w, h, cov).unwrap()
    }

    #[test]
    fn identical_binary_masks_score_clamp_floor() {
        let m = checker(16, 8);
        let loss = bce_mask_loss(&m, &m).unwrap();
        let floor = -math::ln(1.0 - BCE_CLAMP);
        assert!((loss - floor).abs() < 1e-15, "{loss} vs {floor}");
    }

    #[test]
    fn complement_scores_clamp_ceiling() {
        let m = checker(16, 8);
        let inv = SilhouetteMask::new(
            16,
            8,
            m.coverage().iter().map(|v| 1.0 - v).collect(),
        )
        .unwrap();
        let loss = bce_mask_loss(&m, &inv).unwrap();
        let ceiling = -math::ln(BCE_CLAMP);
        assert!((loss - ceiling).abs() < 1e-12, "{loss} vs {ceiling}");
    }

    #[test]
    fn uniform_half_scores_ln2_for_any_reference() {
        let half = SilhouetteMask::new(16, 8, alloc::vec![0.5; 128]).unwrap();
        for reference in [checker(16, 8), SilhouetteMask::zeros(16, 8)] {
            let loss = bce_mask_loss(&reference, &half).unwrap();
            assert!((loss - core::f64::consts::LN_2).abs() < 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = SilhouetteMask::zeros(4, 4);
        let b = SilhouetteMask::zeros(4, 5);
        assert!(matches!(
            bce_mask_loss(&a, &b),
            Err(ViewpointError::DimensionMismatch { .. })
        ));
    }
}
