//! The observation algebra offers conjunction and disjunction only; a
//! complement of a verifiable set is not verifiable in general, so nothing
//! in the public surface may build one.

const SOURCE: &str = include_str!("../src/observation.rs");

#[test]
fn no_negation_in_the_observation_module() {
    let public: Vec<&str> = SOURCE
        .lines()
        .map(str::trim_start)
        .filter(|l| l.starts_with("pub fn") || l.starts_with("pub(crate) fn"))
        .collect();
    assert!(!public.is_empty());
    for line in public {
        let lower = line.to_lowercase();
        for banned in ["negat", "fn not", "complement", "fn invert"] {
            assert!(!lower.contains(banned), "found `{banned}` in `{line}`");
        }
    }
    assert!(!SOURCE.contains("impl std::ops::Not") && !SOURCE.contains("impl Not for"));
}
