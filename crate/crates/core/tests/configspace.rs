mod common;

use proptest::prelude::*;
use quasifree::configspace::{
    enumerate_configurations, exp_config, k_inverse, k_transform, k_transform_at, linear_pairing, star,
};
use quasifree::{Caps, Configuration, ConfigurationFunction, SymmetricIndicator, Window};

fn one(site: usize) -> Configuration {
    Configuration::from_sites([site])
}

#[test]
fn configuration_basics() {
    let c = Configuration::from_sites([2, 0, 2]);
    assert_eq!(c.size(), 3);
    assert_eq!(c.count(2), 2);
    assert!(!c.is_simple());
    assert_eq!(c.expanded(), vec![0, 2, 2]);
    assert_eq!(c.counts(), &[(0, 1), (2, 2)]);
    assert_eq!(Configuration::from_counts([(1, 0), (3, 1)]).counts(), &[(3, 1)]);
    assert_eq!(serde_json::to_string(&c).unwrap(), "[[0,1],[2,2]]");
    let back: Configuration = serde_json::from_str("[[0,1],[2,2]]").unwrap();
    assert_eq!(back, c);
}

#[test]
fn k_transform_examples() {
    let w = Window::full(3);
    let caps = Caps::new(4, 3);
    let xi = ConfigurationFunction::xi(w.clone(), caps);
    for gamma in enumerate_configurations(&w, caps) {
        assert_eq!(k_transform_at(&xi, &gamma), 1.0);
    }
    let d1 = ConfigurationFunction::delta(one(0), w.clone(), caps).unwrap();
    for gamma in enumerate_configurations(&w, caps) {
        assert_eq!(k_transform_at(&d1, &gamma), f64::from(gamma.count(0)));
    }
    let d12 = ConfigurationFunction::delta(Configuration::from_sites([0, 1]), w.clone(), caps).unwrap();
    assert_eq!(k_transform_at(&d12, &Configuration::from_sites([0, 1])), 1.0);
    assert_eq!(k_transform_at(&d12, &one(0)), 0.0);

    let ones = ConfigurationFunction::from_fn(w.clone(), caps, |_| 1.0).unwrap();
    assert!(k_inverse(&ones).unwrap().max_abs_diff(&xi) < 1e-15);
}

#[test]
fn k_inverse_of_exponential() {
    let phi = |x: usize| [0.3, -0.7, 1.1, 0.05, -0.2, 0.4, 0.9, -1.3][x];
    let n = 8;
    let w = Window::full(n);
    let caps = Caps::simple(n);
    let f = ConfigurationFunction::from_fn(w.clone(), caps, |g| linear_pairing(phi, g).exp()).unwrap();
    let g = k_inverse(&f).unwrap();
    for eta in enumerate_configurations(&w, caps) {
        let want = exp_config(|x| phi(x).exp() - 1.0, &eta);
        assert!((g.get(&eta) - want).abs() < 1e-12, "{eta}");
    }
}

#[test]
fn star_examples() {
    let w = Window::full(3);
    let caps = Caps::new(3, 2);
    let g = ConfigurationFunction::from_fn(w.clone(), caps, |c| c.size() as f64 - 0.5).unwrap();
    let xi = ConfigurationFunction::xi(w.clone(), caps);
    assert!(star(&g, &xi).unwrap().max_abs_diff(&g) < 1e-15);

    let d = ConfigurationFunction::delta(one(0), w.clone(), Caps::new(1, 1)).unwrap();
    let s = star(&d, &d).unwrap();
    assert_eq!(s.get(&one(0)), 1.0);
    assert_eq!(s.get(&Configuration::from_sites([0, 0])), 2.0);
    assert_eq!(s.len(), 2);
}

#[test]
fn pairings() {
    let phi2 = |x: usize| if x == 0 { 2.0 } else { 5.0 };
    assert_eq!(exp_config(phi2, &Configuration::empty()), 1.0);
    assert_eq!(exp_config(|_| 1.0, &Configuration::from_sites([0, 1, 1])), 1.0);
    assert_eq!(exp_config(phi2, &Configuration::from_sites([0, 0])), 4.0);
    assert_eq!(linear_pairing(phi2, &Configuration::empty()), 0.0);
    assert_eq!(linear_pairing(|x| if x == 0 { 3.0 } else { 0.0 }, &Configuration::from_sites([0, 0])), 6.0);
    let inside = Window::new([0, 2]);
    let c = Configuration::from_sites([0, 1, 2, 2]);
    assert_eq!(linear_pairing(|x| if inside.contains(x) { 1.0 } else { 0.0 }, &c), 3.0);
}

#[test]
fn symmetric_indicator_examples() {
    let single = SymmetricIndicator::new(vec![Window::singleton(0)]).unwrap();
    assert_eq!(single.eval(&one(0)), 1.0);
    assert_eq!(single.eval(&one(1)), 0.0);

    let full = Window::full(3);
    let same = SymmetricIndicator::new(vec![full.clone(), full.clone()]).unwrap();
    for eta in enumerate_configurations(&full, Caps::new(3, 2)) {
        assert_eq!(same.eval(&eta), if eta.size() == 2 { 1.0 } else { 0.0 });
    }

    let pair = [Window::singleton(0), Window::singleton(1)];
    let g = SymmetricIndicator::new(pair.to_vec()).unwrap();
    let eta = Configuration::from_sites([0, 1]);
    assert_eq!(g.eval(&eta), 0.5);
    assert_eq!(g.eval(&eta), common::symmetric_indicator(&pair, &eta));
}

fn table(values: &[f64], window: &Window, caps: Caps) -> ConfigurationFunction {
    let configs = enumerate_configurations(window, caps);
    let mut f = ConfigurationFunction::zero(window.clone(), caps);
    for (c, v) in configs.into_iter().zip(values.iter().cycle()) {
        f.set(c, *v).unwrap();
    }
    f
}

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn k_round_trip(n in 1usize..7, v in values()) {
        let w = Window::full(n);
        let caps = Caps::new(4, 3);
        let g = table(&v, &w, caps);
        let f = k_transform(&g, &w, caps).unwrap();
        prop_assert!(k_inverse(&f).unwrap().max_abs_diff(&g) <= 1e-12);
        for gamma in enumerate_configurations(&w, caps).iter().take(30) {
            let want = common::k_transform(&|c: &[u32]| g.get(&common::from_counts(c)), &common::counts(gamma, n));
            prop_assert!((f.get(gamma) - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn star_is_multiplicative(n in 1usize..5, a in values(), b in values()) {
        let w = Window::full(n);
        let g1 = table(&a, &w, Caps::new(2, 2));
        let g2 = table(&b, &w, Caps::new(3, 1));
        let s = star(&g1, &g2).unwrap();
        for gamma in enumerate_configurations(&w, Caps::new(4, 3)) {
            let lhs = k_transform_at(&s, &gamma);
            let rhs = k_transform_at(&g1, &gamma) * k_transform_at(&g2, &gamma);
            prop_assert!((lhs - rhs).abs() <= 1e-12, "{gamma}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn star_is_commutative_and_associative(n in 1usize..4, a in values(), b in values(), c in values()) {
        let w = Window::full(n);
        let g1 = table(&a, &w, Caps::new(2, 2));
        let g2 = table(&b, &w, Caps::new(2, 1));
        let g3 = table(&c, &w, Caps::new(2, 2));
        prop_assert!(star(&g1, &g2).unwrap().max_abs_diff(&star(&g2, &g1).unwrap()) <= 1e-12);
        let left = star(&star(&g1, &g2).unwrap(), &g3).unwrap();
        let right = star(&g1, &star(&g2, &g3).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn restriction_keeps_one_level(n in 1usize..5, v in values(), level in 0usize..4) {
        let w = Window::full(n);
        let g = table(&v, &w, Caps::new(3, 2));
        let r = g.restriction(level);
        for (eta, value) in r.iter() {
            prop_assert_eq!(eta.size(), level);
            prop_assert_eq!(value, g.get(eta));
        }
        prop_assert_eq!(r.len(), g.iter().filter(|(e, _)| e.size() == level).count());
    }
}
