/// Seed for instance `index` of a suite run with `base`.
///
/// Instances are derived by counter so that any single instance can be
/// rebuilt without replaying the ones before it.
pub fn instance_seed(base: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_indices_give_distinct_seeds() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| instance_seed(5, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(instance_seed(5, 37), instance_seed(5, 37));
    }
}
