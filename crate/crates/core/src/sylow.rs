use crate::group::{FiniteGroup, Subgroup};

fn p_part(mut n: usize, p: usize) -> usize {
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A Sylow `p`-subgroup, grown from the trivial subgroup by repeatedly
/// adjoining the least `p`-element of the normalizer not yet in `P`.
///
/// # Panics
/// If `p` is not prime.
pub fn sylow_subgroup(g: &FiniteGroup, p: usize) -> Subgroup {
    assert!(is_prime(p), "{p} is not prime");
    let target = p_part(g.order(), p);
    let mut current = g.trivial_subgroup();
    while current.order() < target {
        let norm = g.normalizer(&current).expect("same parent");
        let next = norm
            .members()
            .find(|&x| !current.contains(x) && is_p_power(g.element_order(x), p as u64))
            .expect("a proper p-subgroup is proper in its normalizer");
        current = g.extend(&current, &[next]);
    }
    current
}
