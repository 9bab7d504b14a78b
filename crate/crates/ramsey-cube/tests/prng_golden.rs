use ramsey_cube::io::prng::Prng;

fn first_eight(mut p: Prng) -> Vec<String> {
    (0..8).map(|_| format!("{:016x}", p.next_u64())).collect()
}

#[test]
fn streams_match_golden_file() {
    let text = include_str!("data/prng_golden.txt");
    let mut checked = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let (key, outputs) = line.split_once(" : ").expect("golden line");
        let want: Vec<String> = outputs.split(' ').map(str::to_string).collect();
        let words: Vec<&str> = key.split(' ').collect();
        let nums: Vec<u64> = words[1..].iter().map(|w| w.parse().unwrap()).collect();
        let p = match words[0] {
            "raw" => Prng::from_state(nums[0]),
            "stream" => Prng::new(nums[0], nums[1]),
            "derive" => Prng::derive(nums[0], &nums[1..]),
            other => panic!("unknown kind {other}"),
        };
        assert_eq!(first_eight(p), want, "{key}");
        checked += 1;
    }
    assert_eq!(checked, 7);
}

#[test]
fn same_stream_twice() {
    assert_eq!(first_eight(Prng::new(5, 3)), first_eight(Prng::new(5, 3)));
}

#[test]
fn distinct_streams_differ() {
    let mut clashes = 0;
    for i in 0..10_000u64 {
        let (mut a, mut b) = (Prng::new(i / 100, i % 100), Prng::new(i / 100, i % 100 + 100));
        let x: Vec<u64> = (0..4).map(|_| a.next_u64()).collect();
        let y: Vec<u64> = (0..4).map(|_| b.next_u64()).collect();
        clashes += x.iter().zip(&y).filter(|(p, q)| p == q).count();
    }
    assert_eq!(clashes, 0);
}
