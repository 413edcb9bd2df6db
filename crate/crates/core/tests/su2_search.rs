use mubtomo::sim::su2_family_search;

#[test]
fn spin_one_families_never_unbiased() {
    let report = su2_family_search(2, 1000, 2024, 1e-12);
    println!("{}", report.summary);
    assert!(!report.found);
    assert!(report.min_violation >= 0.01, "{report:?}");
}

#[test]
fn random_spin_half_families_are_generically_biased() {
    // Random qubit families are generically not unbiased either; the
    // explicit x/y/z family is checked in the unit tests.
    let report = su2_family_search(1, 200, 7, 1e-12);
    assert!(!report.found);
}
