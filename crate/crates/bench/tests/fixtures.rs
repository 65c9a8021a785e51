use qdesign_bench::{golay, singer_group, singer_system};

#[test]
fn golay_parameters() {
    let c = golay();
    assert_eq!((c.n(), c.k()), (23, 12));
    assert_eq!(c.min_distance(1 << 12).unwrap(), Some(7));
}

#[test]
fn singer_fixtures() {
    assert_eq!(singer_group(2, 6).order(1000).unwrap(), 63);
    let sys = singer_system(2, 6, 2, 3);
    assert_eq!((sys.rows(), sys.cols()), (11, 23));
}
