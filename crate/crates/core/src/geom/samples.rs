//! Hand-built points of the critical locus, and one point off it.

use super::quiver::{check_critical, stab_d, stab_n, Mat, QuiverRep};
use crate::ratfun::Q;
use crate::report::Check;

/// The two `B`'s acting on a module framed by color `k`.
fn acting(k: usize) -> (usize, usize) {
    match k {
        1 => (1, 2),
        2 => (0, 2),
        3 => (0, 1),
        _ => panic!("framing color {k}"),
    }
}

/// Monomial module of a partition, framed by one vector of color `k`:
/// boxes `(i, j)`, the two acting `B`'s move along rows and columns, the third is zero.
pub fn partition_module(k: usize, parts: &[usize]) -> QuiverRep {
    let boxes: Vec<(usize, usize)> = parts.iter().enumerate().flat_map(|(i, &l)| (0..l).map(move |j| (i, j))).collect();
    let n = boxes.len();
    let mut r = [0; 3];
    r[k - 1] = 1;
    let mut q = QuiverRep::zero(n, r);
    let (x, y) = acting(k);
    let idx = |b: (usize, usize)| boxes.iter().position(|&c| c == b);
    for (s, &(i, j)) in boxes.iter().enumerate() {
        if let Some(t) = idx((i + 1, j)) {
            q.b[x].set(t, s, Q::int(1));
        }
        if let Some(t) = idx((i, j + 1)) {
            q.b[y].set(t, s, Q::int(1));
        }
    }
    if n > 0 {
        *q.i_for_mut(k) = Mat::unit(n, 1, 0, 0);
    }
    q
}

/// Diagonal `B`'s in the two directions of color `k` with framing vector `v`.
pub fn diagonal_module(k: usize, ex: &[i64], ey: &[i64], v: &[i64]) -> QuiverRep {
    let n = ex.len();
    let mut r = [0; 3];
    r[k - 1] = 1;
    let mut q = QuiverRep::zero(n, r);
    let (x, y) = acting(k);
    for i in 0..n {
        q.b[x].set(i, i, Q::int(ex[i]));
        q.b[y].set(i, i, Q::int(ey[i]));
    }
    let col: Vec<&[i64]> = v.chunks(1).collect();
    *q.i_for_mut(k) = Mat::from_ints(&col, 1);
    q
}

/// `n = 2`, framing color 3: `[B1, B2] = -I12 J12` with `J12 != 0`.
pub fn rank_one_correction() -> QuiverRep {
    let mut q = QuiverRep::zero(2, [0, 0, 1]);
    q.b[0] = Mat::from_ints(&[&[0, 1], &[0, 0]], 2);
    q.b[1] = Mat::from_ints(&[&[1, 0], &[0, 0]], 2);
    q.i12 = Mat::unit(2, 1, 0, 0);
    q.j12 = Mat::unit(1, 2, 0, 1);
    q
}

/// A sample of the critical locus with `n <= 4`, named.
pub fn sample_library() -> Vec<(String, QuiverRep)> {
    let mut out: Vec<(String, QuiverRep)> = Vec::new();
    let mut push = |name: String, q: QuiverRep| out.push((name, q));

    push("zero/n=0,r=0,0,1".into(), QuiverRep::zero(0, [0, 0, 1]));
    push("zero/n=2,r=0,0,1".into(), QuiverRep::zero(2, [0, 0, 1]));
    push("zero/n=3,r=1,1,1".into(), QuiverRep::zero(3, [1, 1, 1]));

    let partitions: [&[usize]; 11] = [&[1], &[2], &[1, 1], &[3], &[2, 1], &[1, 1, 1], &[4], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]];
    for p in partitions {
        push(format!("partition/k=3/{p:?}"), partition_module(3, p));
    }
    for p in [&[2, 1][..], &[2, 2], &[3]] {
        push(format!("partition/k=1/{p:?}"), partition_module(1, p));
        push(format!("partition/k=2/{p:?}"), partition_module(2, p));
    }

    push("diagonal/k=3,cyclic".into(), diagonal_module(3, &[1, 2, 3], &[0, 5, -1], &[1, 1, 1]));
    push("diagonal/k=3,missing".into(), diagonal_module(3, &[1, 2, 3], &[0, 5, -1], &[1, 1, 0]));
    push("diagonal/k=3,repeated".into(), diagonal_module(3, &[1, 1], &[2, 2], &[1, 1]));
    push("diagonal/k=1,cyclic".into(), diagonal_module(1, &[0, 1], &[1, 1], &[1, -1]));

    push("sum/k=3+1".into(), partition_module(3, &[2]).direct_sum(&partition_module(1, &[1, 1])));
    push("sum/k=3+2".into(), partition_module(3, &[1]).direct_sum(&partition_module(2, &[2, 1])));
    push("sum/k=1+2+3".into(), partition_module(1, &[1]).direct_sum(&partition_module(2, &[1])).direct_sum(&partition_module(3, &[1, 1])));
    push("sum/k=3+3".into(), partition_module(3, &[2]).direct_sum(&partition_module(3, &[1, 1])));
    push("sum/k=3+free".into(), partition_module(3, &[2, 1]).direct_sum(&QuiverRep::zero(1, [0, 0, 0])));

    push("rank-one-IJ/n=2".into(), rank_one_correction());
    out
}

/// Off the critical locus: `B3 I12 != 0` makes `I12` cyclic only with `B3`.
pub fn off_critical_witness() -> QuiverRep {
    let mut q = QuiverRep::zero(2, [0, 0, 1]);
    q.i12 = Mat::unit(2, 1, 0, 0);
    q.b[2] = Mat::unit(2, 2, 1, 0);
    q
}

/// `stab_N = stab_D` on one instance; fails if the instance is not critical.
pub fn check_stability_instance(name: &str, q: &QuiverRep) -> Check {
    let crit = check_critical(q);
    let (sn, sd) = (stab_n(q), stab_d(q));
    let c = Check::new(format!("stability/{name}"), "on the critical locus, stab_N iff stab_D")
        .param("n", q.n)
        .param("r", format!("{},{},{}", q.r[0], q.r[1], q.r[2]))
        .detail(format!("critical={crit} stab_N={sn} stab_D={sd} dims N={} D={}", q.stab_n_dim(), q.stab_d_dim()));
    if !crit {
        c.outcome(false, "not on the critical locus")
    } else if sn != sd {
        c.outcome(false, format!("stab_N={sn} stab_D={sd}"))
    } else {
        c.outcome(true, "0")
    }
}

/// Passes iff the witness is off the critical locus with `stab_N` and not `stab_D`.
pub fn check_witness() -> Check {
    let q = off_critical_witness();
    let (crit, sn, sd) = (check_critical(&q), stab_n(&q), stab_d(&q));
    Check::new("stability/off-critical-witness", "off the critical locus stab_N need not imply stab_D")
        .param("n", q.n)
        .outcome(!crit && sn && !sd, if !crit && sn && !sd { "0".to_string() } else { format!("critical={crit} stab_N={sn} stab_D={sd}") })
        .detail(format!("critical={crit} stab_N={sn} stab_D={sd}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_is_critical() {
        let lib = sample_library();
        assert!(lib.len() >= 20);
        for (name, q) in &lib {
            q.check_shapes().unwrap();
            assert!(q.n <= 4, "{name}");
            assert!(check_critical(q), "{name}");
        }
    }

    #[test]
    fn expected_stability() {
        let lib = sample_library();
        let get = |n: &str| &lib.iter().find(|(k, _)| k == n).unwrap().1;
        assert!(stab_d(get("partition/k=3/[2, 2]")));
        assert!(stab_d(get("sum/k=1+2+3")));
        assert!(stab_d(get("diagonal/k=3,cyclic")));
        assert!(!stab_n(get("diagonal/k=3,missing")));
        assert!(!stab_n(get("sum/k=3+free")));
        assert!(!stab_n(get("rank-one-IJ/n=2")));
    }

    #[test]
    fn witness() {
        assert!(check_witness().passed());
    }
}
