//! Kauffman bracket by brute-force state sum, used as an independent check
//! on the Alexander polynomial through `|V(-1)| = |Δ(-1)|`.

use latticeknot::planar::PlanarDiagram;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Bracket coefficients keyed by exponent of `A`, offset by `4n`.
pub fn bracket(pd: &PlanarDiagram) -> Vec<i64> {
    let n = pd.crossing_count();
    assert!(n <= 16, "state sum over {n} crossings is too slow");
    let mut coeffs = vec![0i64; 8 * n + 1];
    if n == 0 {
        coeffs[0] = 1;
        return coeffs;
    }
    let edges = 2 * n;
    // tally[a - b + n][loops]
    let mut tally = vec![vec![0i64; n + 2]; 2 * n + 1];
    for state in 0u32..(1 << n) {
        let mut parent: Vec<usize> = (0..edges).collect();
        let mut a_count = 0usize;
        for (i, c) in pd.crossings.iter().enumerate() {
            let [a, b, cc, d] = c.edges;
            let pairs = if state >> i & 1 == 0 {
                a_count += 1;
                [(a, b), (cc, d)]
            } else {
                [(a, d), (b, cc)]
            };
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[rx] = ry;
            }
        }
        let loops = (0..edges).filter(|&e| find(&mut parent, e) == e).count();
        tally[2 * a_count][loops] += 1;
    }
    // powers of d = -A^2 - A^-2 as coefficient vectors offset by 2k
    let mut d_pow = vec![vec![1i64]];
    for k in 1..=n + 1 {
        let prev = &d_pow[k - 1];
        let mut next = vec![0i64; prev.len() + 4];
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
            next[i + 4] -= c;
        }
        d_pow.push(next);
    }
    for (diff, row) in tally.iter().enumerate() {
        for (loops, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let k = loops - 1;
            for (i, &c) in d_pow[k].iter().enumerate() {
                // exponent: (diff - n) + (i - 2k)
                let e = diff as i64 - n as i64 + i as i64 - 2 * k as i64;
                coeffs[(e + 4 * n as i64) as usize] += count * c;
            }
        }
    }
    coeffs
}

/// `|<K>|` at a primitive eighth root of unity, which equals the knot
/// determinant.
pub fn determinant(pd: &PlanarDiagram) -> u64 {
    let n = pd.crossing_count() as i64;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (idx, &c) in bracket(pd).iter().enumerate() {
        let angle = std::f64::consts::FRAC_PI_4 * (idx as i64 - 4 * n) as f64;
        re += c as f64 * angle.cos();
        im += c as f64 * angle.sin();
    }
    re.hypot(im).round() as u64
}
