//! Framed representations of the spiked-instanton quiver: the critical locus
//! equations and the two stability conditions.

use super::GeomError;
use crate::ratfun::Q;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// A dense matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Q::int(0); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::int(1));
        }
        m
    }

    /// Builds from integer rows; `cols` is needed when there are no rows.
    pub fn from_ints(rows: &[&[i64]], cols: usize) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, Q::int(*x));
            }
        }
        m
    }

    /// Matrix unit `E_{ij}` of the given shape.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        m.set(i, j, Q::int(1));
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut m = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let x = m.get(i, j) + &(a * b);
                        m.set(i, j, x);
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Q::int(0), |acc, j| &acc + &(self.get(i, j) * &v[j])))
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!(self.shape(), o.shape());
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!(self.shape(), o.shape());
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn comm(&self, o: &Mat) -> Mat {
        self.mul(o).sub(&o.mul(self))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Mat) -> Mat {
        let mut m = Mat::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }

    fn from_strings(name: &str, rows: &[Vec<String>], shape: (usize, usize)) -> Result<Mat, GeomError> {
        let bad_shape = || GeomError::Shape { field: name.to_string(), expected: shape, found: (rows.len(), rows.first().map_or(0, |r| r.len())) };
        // An n x 0 matrix may be written either as n empty rows or as [].
        if shape.1 == 0 && (rows.is_empty() || rows.iter().all(|r| r.is_empty())) {
            if rows.is_empty() || rows.len() == shape.0 {
                return Ok(Mat::zeros(shape.0, 0));
            }
            return Err(bad_shape());
        }
        if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
            return Err(bad_shape());
        }
        let mut m = Mat::zeros(shape.0, shape.1);
        for (i, r) in rows.iter().enumerate() {
            for (j, s) in r.iter().enumerate() {
                m.set(i, j, parse_q(s).map_err(|_| GeomError::Entry { field: name.to_string(), value: s.clone() })?);
            }
        }
        Ok(m)
    }
}

fn parse_q(s: &str) -> Result<Q, ()> {
    BigRational::from_str(s.trim()).map(Q::from_big).map_err(|_| ())
}

/// Row-reduced basis of a subspace of Q^n.
#[derive(Clone, Debug)]
struct Span {
    n: usize,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Span {
    fn new(n: usize) -> Span {
        Span { n, rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the nonzero remainder if `v` is new.
    fn reduce(&self, mut v: Vec<Q>) -> Option<Vec<Q>> {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        v.iter().any(|x| !x.is_zero()).then_some(v)
    }

    fn insert(&mut self, v: Vec<Q>) -> Option<Vec<Q>> {
        let mut v = self.reduce(v)?;
        let p = v.iter().position(|x| !x.is_zero()).expect("nonzero");
        let inv = v[p].inv();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        self.rows.push((p, v.clone()));
        Some(v)
    }

    /// Smallest subspace containing `self` and the seeds and closed under `ops`.
    fn close(&mut self, seeds: impl IntoIterator<Item = Vec<Q>>, ops: &[&Mat]) {
        let mut queue: Vec<Vec<Q>> = seeds.into_iter().filter_map(|v| self.insert(v)).collect();
        while let Some(v) = queue.pop() {
            if self.dim() == self.n {
                return;
            }
            for b in ops {
                if let Some(w) = self.insert(b.apply(&v)) {
                    queue.push(w);
                }
            }
        }
    }
}

/// Dimension of `C<ops> * span(seeds)`.
pub fn closure_dim(n: usize, seeds: &[Vec<Q>], ops: &[&Mat]) -> usize {
    let mut s = Span::new(n);
    s.close(seeds.iter().cloned(), ops);
    s.dim()
}

/// A representation of the framed quiver with dimension vector `(n; r1, r2, r3)`.
///
/// `I12: C^{r3} -> C^n`, `I13: C^{r2} -> C^n`, `I23: C^{r1} -> C^n`, and the
/// `J`'s go the other way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub n: usize,
    pub r: [usize; 3],
    pub b: [Mat; 3],
    pub i12: Mat,
    pub j12: Mat,
    pub i13: Mat,
    pub j13: Mat,
    pub i23: Mat,
    pub j23: Mat,
}

impl QuiverRep {
    pub fn zero(n: usize, r: [usize; 3]) -> QuiverRep {
        QuiverRep {
            n,
            r,
            b: [Mat::zeros(n, n), Mat::zeros(n, n), Mat::zeros(n, n)],
            i12: Mat::zeros(n, r[2]),
            j12: Mat::zeros(r[2], n),
            i13: Mat::zeros(n, r[1]),
            j13: Mat::zeros(r[1], n),
            i23: Mat::zeros(n, r[0]),
            j23: Mat::zeros(r[0], n),
        }
    }

    /// The framing map `I` whose source is `C^{r_k}`.
    pub fn i_for(&self, k: usize) -> &Mat {
        match k {
            1 => &self.i23,
            2 => &self.i13,
            3 => &self.i12,
            _ => panic!("framing color {k}"),
        }
    }

    pub fn i_for_mut(&mut self, k: usize) -> &mut Mat {
        match k {
            1 => &mut self.i23,
            2 => &mut self.i13,
            3 => &mut self.i12,
            _ => panic!("framing color {k}"),
        }
    }

    pub fn j_for_mut(&mut self, k: usize) -> &mut Mat {
        match k {
            1 => &mut self.j23,
            2 => &mut self.j13,
            3 => &mut self.j12,
            _ => panic!("framing color {k}"),
        }
    }

    pub fn check_shapes(&self) -> Result<(), GeomError> {
        let (n, r) = (self.n, self.r);
        let want = [
            ("B1", &self.b[0], (n, n)),
            ("B2", &self.b[1], (n, n)),
            ("B3", &self.b[2], (n, n)),
            ("I12", &self.i12, (n, r[2])),
            ("J12", &self.j12, (r[2], n)),
            ("I13", &self.i13, (n, r[1])),
            ("J13", &self.j13, (r[1], n)),
            ("I23", &self.i23, (n, r[0])),
            ("J23", &self.j23, (r[0], n)),
        ];
        for (name, m, s) in want {
            if m.shape() != s {
                return Err(GeomError::Shape { field: name.into(), expected: s, found: m.shape() });
            }
        }
        Ok(())
    }

    /// Block sum of two representations.
    pub fn direct_sum(&self, o: &QuiverRep) -> QuiverRep {
        let r = [0, 1, 2].map(|k| self.r[k] + o.r[k]);
        QuiverRep {
            n: self.n + o.n,
            r,
            b: [0, 1, 2].map(|k| self.b[k].direct_sum(&o.b[k])),
            i12: self.i12.direct_sum(&o.i12),
            j12: self.j12.direct_sum(&o.j12),
            i13: self.i13.direct_sum(&o.i13),
            j13: self.j13.direct_sum(&o.j13),
            i23: self.i23.direct_sum(&o.i23),
            j23: self.j23.direct_sum(&o.j23),
        }
    }

    /// The nine equations, each with its value; all must vanish on the critical locus.
    pub fn critical_residuals(&self) -> Vec<(&'static str, Mat)> {
        let [b1, b2, b3] = &self.b;
        vec![
            ("mu12", b1.comm(b2).add(&self.i12.mul(&self.j12))),
            ("mu13", b1.comm(b3).add(&self.i13.mul(&self.j13))),
            ("mu23", b2.comm(b3).add(&self.i23.mul(&self.j23))),
            ("J12 B3", self.j12.mul(b3)),
            ("J13 B2", self.j13.mul(b2)),
            ("J23 B1", self.j23.mul(b1)),
            ("B3 I12", b3.mul(&self.i12)),
            ("B2 I13", b2.mul(&self.i13)),
            ("B1 I23", b1.mul(&self.i23)),
        ]
    }

    fn images(&self, m: &Mat) -> Vec<Vec<Q>> {
        (0..m.cols()).map(|j| m.column(j)).collect()
    }

    /// Dimension of `C<B1,B2,B3>(im I12 + im I13 + im I23)`.
    pub fn stab_n_dim(&self) -> usize {
        let seeds: Vec<Vec<Q>> = [&self.i12, &self.i13, &self.i23].into_iter().flat_map(|m| self.images(m)).collect();
        closure_dim(self.n, &seeds, &[&self.b[0], &self.b[1], &self.b[2]])
    }

    /// Dimension of `C<B1,B2> I12 + C<B1,B3> I13 + C<B2,B3> I23`.
    pub fn stab_d_dim(&self) -> usize {
        let [b1, b2, b3] = &self.b;
        let parts = [(&self.i12, [b1, b2]), (&self.i13, [b1, b3]), (&self.i23, [b2, b3])];
        let mut total = Span::new(self.n);
        for (i, ops) in parts {
            let mut s = Span::new(self.n);
            s.close(self.images(i), &ops);
            for (_, v) in s.rows {
                total.insert(v);
            }
        }
        total.dim()
    }
}

pub fn check_critical(rep: &QuiverRep) -> bool {
    rep.critical_residuals().iter().all(|(_, m)| m.is_zero())
}

pub fn stab_n(rep: &QuiverRep) -> bool {
    rep.stab_n_dim() == rep.n
}

pub fn stab_d(rep: &QuiverRep) -> bool {
    rep.stab_d_dim() == rep.n
}

/// On-disk form: rational entries as strings, absent matrices are zero.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverJson {
    n: usize,
    r: [usize; 3],
    #[serde(rename = "B1", default)]
    b1: Option<Vec<Vec<String>>>,
    #[serde(rename = "B2", default)]
    b2: Option<Vec<Vec<String>>>,
    #[serde(rename = "B3", default)]
    b3: Option<Vec<Vec<String>>>,
    #[serde(rename = "I12", default)]
    i12: Option<Vec<Vec<String>>>,
    #[serde(rename = "J12", default)]
    j12: Option<Vec<Vec<String>>>,
    #[serde(rename = "I13", default)]
    i13: Option<Vec<Vec<String>>>,
    #[serde(rename = "J13", default)]
    j13: Option<Vec<Vec<String>>>,
    #[serde(rename = "I23", default)]
    i23: Option<Vec<Vec<String>>>,
    #[serde(rename = "J23", default)]
    j23: Option<Vec<Vec<String>>>,
}

impl QuiverRep {
    pub fn from_json(src: &str) -> Result<QuiverRep, GeomError> {
        let j: QuiverJson = serde_json::from_str(src).map_err(|e| GeomError::Json(e.to_string()))?;
        let (n, r) = (j.n, j.r);
        let get = |name: &str, m: &Option<Vec<Vec<String>>>, shape: (usize, usize)| match m {
            Some(rows) => Mat::from_strings(name, rows, shape),
            None => Ok(Mat::zeros(shape.0, shape.1)),
        };
        Ok(QuiverRep {
            n,
            r,
            b: [get("B1", &j.b1, (n, n))?, get("B2", &j.b2, (n, n))?, get("B3", &j.b3, (n, n))?],
            i12: get("I12", &j.i12, (n, r[2]))?,
            j12: get("J12", &j.j12, (r[2], n))?,
            i13: get("I13", &j.i13, (n, r[1]))?,
            j13: get("J13", &j.j13, (r[1], n))?,
            i23: get("I23", &j.i23, (n, r[0]))?,
            j23: get("J23", &j.j23, (r[0], n))?,
        })
    }

    pub fn to_json(&self) -> String {
        let s = |m: &Mat| Some(m.to_strings());
        let j = QuiverJson {
            n: self.n,
            r: self.r,
            b1: s(&self.b[0]),
            b2: s(&self.b[1]),
            b3: s(&self.b[2]),
            i12: s(&self.i12),
            j12: s(&self.j12),
            i13: s(&self.i13),
            j13: s(&self.j13),
            i23: s(&self.i23),
            j23: s(&self.j23),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cyclic_vector() {
        let mut q = QuiverRep::zero(1, [0, 0, 1]);
        q.i12 = Mat::from_ints(&[&[1]], 1);
        assert!(check_critical(&q) && stab_n(&q) && stab_d(&q));
        assert!(!stab_n(&QuiverRep::zero(2, [1, 1, 1])));
        assert!(stab_n(&QuiverRep::zero(0, [0, 0, 1])));
    }

    #[test]
    fn jordan_krylov() {
        let n = 4;
        let mut q = QuiverRep::zero(n, [0, 0, 1]);
        for i in 0..n - 1 {
            q.b[1].set(i + 1, i, Q::int(1));
        }
        q.i12 = Mat::unit(n, 1, 0, 0);
        assert!(check_critical(&q));
        assert!(stab_d(&q) && stab_n(&q));
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"n": 2, "r": [0, 0, 1], "B1": [["0", "0"], ["1/2", "0"]], "I12": [["1"], ["0"]], "I23": []}"#;
        let q = QuiverRep::from_json(src).unwrap();
        assert_eq!(q.b[0].get(1, 0), &Q::new(1, 2));
        assert!(q.b[2].is_zero());
        assert_eq!(QuiverRep::from_json(&q.to_json()).unwrap(), q);
        let bad = r#"{"n": 2, "r": [0, 0, 1], "B1": [["0"]]}"#;
        assert!(matches!(QuiverRep::from_json(bad), Err(GeomError::Shape { .. })));
        let bad = r#"{"n": 1, "r": [0, 0, 1], "I12": [["x"]]}"#;
        assert!(matches!(QuiverRep::from_json(bad), Err(GeomError::Entry { .. })));
    }
}
