use majoritarian::experiments::{canonical_count, canonical_index, impartial_profile, sampled_canonical_profile, DEFAULT_SEED};

fn chi_square(observed: &[u64]) -> f64 {
    let total: u64 = observed.iter().sum();
    let expected = total as f64 / observed.len() as f64;
    observed.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum()
}

#[test]
fn impartial_first_choices_uniform() {
    let n = 4;
    let mut counts = vec![vec![0u64; n]; n];
    for i in 0..4000 {
        let p = impartial_profile(n, DEFAULT_SEED, i);
        for (x, order) in p.orders().iter().enumerate() {
            counts[x][order.top().0] += 1;
        }
    }
    // 3 degrees of freedom, 0.1% critical value
    for row in &counts {
        assert!(chi_square(row) < 16.27, "{row:?}");
    }
}

#[test]
fn canonical_samples_uniform() {
    let total = canonical_count(3).unwrap() as usize;
    let mut counts = vec![0u64; total];
    for i in 0..21_000 {
        let p = sampled_canonical_profile(3, DEFAULT_SEED, i).unwrap();
        counts[canonical_index(&p).unwrap() as usize] += 1;
    }
    // 20 degrees of freedom, 0.1% critical value
    assert!(chi_square(&counts) < 45.31, "{counts:?}");
}

#[test]
fn seeds_change_samples() {
    let a: Vec<String> = (0..20).map(|i| impartial_profile(5, 1, i).to_text()).collect();
    let b: Vec<String> = (0..20).map(|i| impartial_profile(5, 2, i).to_text()).collect();
    assert_ne!(a, b);
    assert_eq!(a, (0..20).map(|i| impartial_profile(5, 1, i).to_text()).collect::<Vec<_>>());
}
