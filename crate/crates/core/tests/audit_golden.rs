mod common;

use common::{pair_corpus, AUDIT_SEED, FROZEN_M_EMP};
use ulfp::farey::SurfaceKind;
use ulfp::projections::{audit_pair, bgit_audit};
use ulfp::slices::weak_tight_reports;

/// Largest weak-tight index seen on the audit corpus; must not grow.
const FROZEN_MAX_INDEX: u64 = 3;

#[test]
fn audit_value_is_frozen() {
    let pairs = pair_corpus(AUDIT_SEED, 100, 3, 6);
    for kind in [SurfaceKind::Torus, SurfaceKind::Sphere] {
        let audit = bgit_audit(kind, &pairs).unwrap();
        assert_eq!(audit.m_emp, FROZEN_M_EMP, "{kind}");
        assert_eq!(audit.pairs_checked, 100);
        assert_eq!(audit.skipped, 0);
        let hit = audit.attained.unwrap();
        let again = audit_pair(kind, hit.x, hit.y).unwrap().unwrap();
        assert_eq!(again.value, hit.value);
        assert!(hit.geodesic.interior().contains(&hit.vertex));
    }
}

#[test]
fn audit_is_deterministic_and_skips_short_pairs() {
    let mut pairs = pair_corpus(AUDIT_SEED, 20, 3, 6);
    pairs.push((ulfp::farey::Slope::INFINITY, ulfp::farey::Slope::ZERO));
    let a = bgit_audit(SurfaceKind::Torus, &pairs).unwrap();
    let b = bgit_audit(SurfaceKind::Torus, &pairs).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.skipped, 1);
    assert_eq!(bgit_audit(SurfaceKind::Torus, &[]).unwrap().m_emp, 0);
}

#[test]
fn weak_tight_index_does_not_regress() {
    let mut max = 0;
    for (a, b) in pair_corpus(AUDIT_SEED, 100, 3, 6) {
        let reports = weak_tight_reports(SurfaceKind::Torus, a, b).unwrap();
        assert!(!reports.is_empty());
        max = max.max(reports.iter().map(|r| r.index).max().unwrap());
    }
    assert!(max <= FROZEN_MAX_INDEX, "index {max} above frozen {FROZEN_MAX_INDEX}");
}
