//! Explicit witnesses: an edited graph plus a bipartition scoring strictly positive.
//!
//! Scores are derived from closed forms on the unedited graph (the balanced
//! split of `K_n`, the `-(sigma - tau)^2 / 2` score of bipartitions of
//! `K_{s,t}`, and the one-edge update identities for removing a crossing edge
//! or adding an edge inside a part), not by rescoring the edited graph.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Edit, Graph};
use crate::modularity::ScoreBreakdown;
use crate::scalar::{int, ratio, ExactInt};

/// An edited graph with a bipartition certifying positive modularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<T: ExactInt> {
    pub graph: Graph,
    pub edits: Vec<Edit>,
    pub bipartition: Bipartition,
    pub score: ScoreBreakdown<T>,
}

/// Solution of `a' t - b' s = 1` with `1 <= a' <= s-1` and `1 <= b' <= t-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiophantinePair {
    pub a_prime: usize,
    pub b_prime: usize,
}

/// How a set `A` meets the sides `S` (size `s`) and `T` (size `t`) of `K_{s,t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BipartiteSplit {
    pub a_in_s: usize,
    pub a_in_t: usize,
    pub s: usize,
    pub t: usize,
}

impl BipartiteSplit {
    pub fn new(a_in_s: usize, a_in_t: usize, s: usize, t: usize) -> Result<Self> {
        if a_in_s > s || a_in_t > t || s == 0 || t == 0 {
            return Err(Error::InvalidParameter(format!(
                "split ({a_in_s}, {a_in_t}) does not fit K_{{{s},{t}}}"
            )));
        }
        Ok(BipartiteSplit { a_in_s, a_in_t, s, t })
    }

    pub fn sigma<T: ExactInt>(&self) -> Result<Ratio<T>> {
        ratio(self.a_in_s as i128, self.s as i128)
    }

    pub fn tau<T: ExactInt>(&self) -> Result<Ratio<T>> {
        ratio(self.a_in_t as i128, self.t as i128)
    }

    /// Score of `{A, V\A}` on `K_{s,t}`: `-(sigma - tau)^2 / 2`.
    pub fn score<T: ExactInt>(&self) -> Result<Ratio<T>> {
        let d = self.sigma::<T>()? - self.tau::<T>()?;
        Ok(-(d.clone() * d) / ratio::<T>(2, 1)?)
    }

    /// Coverage of `{A, V\A}` on `K_{s,t}`: `1 - (sigma + tau) + 2 sigma tau`.
    pub fn coverage<T: ExactInt>(&self) -> Result<Ratio<T>> {
        let (sg, tu) = (self.sigma::<T>()?, self.tau::<T>()?);
        let one = Ratio::from_integer(T::one());
        let two = ratio::<T>(2, 1)?;
        Ok(one - (sg.clone() + tu.clone()) + two * sg * tu)
    }

    /// Edges of `K_{s,t}` inside `V\A`.
    pub fn edges_outside(&self) -> usize {
        (self.s - self.a_in_s) * (self.t - self.a_in_t)
    }

    /// Vertex set `A` with `S = 0..s`, `T = s..s+t`: the first members of each side.
    fn leading_set(&self) -> Vec<usize> {
        (0..self.a_in_s).chain(self.s..self.s + self.a_in_t).collect()
    }
}

/// Score after removing one edge between the parts of a bipartition of a
/// graph with `e` edges whose bipartition scored `q` with coverage `q_e`:
/// `(e-1)^2 q' = e^2 q - e q_e + e - 1/2`.
fn after_crossing_removal<T: ExactInt>(e: usize, q: Ratio<T>, q_e: Ratio<T>) -> Result<ScoreBreakdown<T>> {
    let e_t: Ratio<T> = ratio(e as i128, 1)?;
    let em1: Ratio<T> = ratio(e as i128 - 1, 1)?;
    let half: Ratio<T> = ratio(1, 2)?;
    let score = (e_t.clone() * e_t.clone() * q - e_t.clone() * q_e.clone() + e_t.clone() - half)
        / (em1.clone() * em1.clone());
    let coverage = e_t * q_e / em1;
    Ok(ScoreBreakdown { degree_tax: coverage.clone() - score.clone(), coverage, score })
}

/// Score after adding one edge inside part `A`: `(e+1)^2 q' = e^2 q + 2 e(V\A)`.
fn after_internal_addition<T: ExactInt>(
    e: usize,
    q: Ratio<T>,
    q_e: Ratio<T>,
    edges_outside: usize,
) -> Result<ScoreBreakdown<T>> {
    let e_t: Ratio<T> = ratio(e as i128, 1)?;
    let ep1: Ratio<T> = ratio(e as i128 + 1, 1)?;
    let one = Ratio::from_integer(T::one());
    let outside: Ratio<T> = ratio(2 * edges_outside as i128, 1)?;
    let score = (e_t.clone() * e_t.clone() * q + outside) / (ep1.clone() * ep1.clone());
    let coverage = (e_t * q_e + one) / ep1;
    Ok(ScoreBreakdown { degree_tax: coverage.clone() - score.clone(), coverage, score })
}

/// `K_n` less `floor(n/2)+1` edges across the balanced split `A = 0..ceil(n/2)`.
/// The lexicographically first crossing edges are deleted.
pub fn kn_minus_witness<T: ExactInt>(n: usize) -> Result<Witness<T>> {
    if n <= 3 {
        return Err(Error::InvalidParameter(format!("K_n witness needs n >= 4, got {n}")));
    }
    let a = n.div_ceil(2);
    let k = n / 2 + 1;
    let edits: Vec<Edit> = (0..a)
        .flat_map(|u| (a..n).map(move |v| Edit::remove(u, v)))
        .take(k)
        .collect();
    let graph = Graph::complete(n).with_edits(&edits)?;
    let bipartition = Bipartition::from_vertices(n, 0..a)?;

    let n_i = n as i128;
    let half: Ratio<T> = ratio(1, 2)?;
    let score = if n.is_multiple_of(2) {
        let d = n_i * n_i - 2 * n_i - 2;
        let bonus: Ratio<T> = ratio(1, d)?;
        ScoreBreakdown { coverage: half.clone() + bonus.clone(), degree_tax: half, score: bonus }
    } else {
        let m = (n_i * n_i - 2 * n_i - 1) / 2;
        ScoreBreakdown {
            coverage: half.clone() + ratio(1, 2 * m)?,
            degree_tax: half + ratio(m + 1, 4 * m * m)?,
            score: ratio(m - 1, 4 * m * m)?,
        }
    };
    Ok(Witness { graph, edits, bipartition, score })
}

/// The pair `(a', b')` for coprime `s >= 2` and `t`, via extended Euclid.
pub fn diophantine_pair(s: usize, t: usize) -> Result<DiophantinePair> {
    if s < 2 || t < 1 {
        return Err(Error::InvalidParameter(format!("need s >= 2 and t >= 1, got ({s}, {t})")));
    }
    let (s_i, t_i) = (s as i64, t as i64);
    let eg = t_i.extended_gcd(&s_i);
    if eg.gcd != 1 {
        return Err(Error::InvalidParameter(format!("gcd({s}, {t}) = {} is not 1", eg.gcd)));
    }
    // t*x + s*y = 1, so a' = x mod s solves a' t = 1 (mod s)
    let a = eg.x.rem_euclid(s_i);
    let b = (a * t_i - 1) / s_i;
    debug_assert_eq!(a * t_i - b * s_i, 1);
    Ok(DiophantinePair { a_prime: a as usize, b_prime: b as usize })
}

/// Removes one edge from `K_{s,t}` (`2 <= s <= t`, the size-`s` side on
/// `0..s`) so that the returned bipartition scores strictly positive.
///
/// With `l = gcd(s,t) > 1`, `A` takes `s/l` and `t/l` leading vertices of
/// each side, giving score 0 before the removal. For coprime sides, `A`
/// takes `a'` and `b'` leading vertices, so `|sigma - tau| = 1/(st)`. In
/// both cases the removed edge is the first one leaving `A`.
pub fn bipartite_removal_witness<T: ExactInt>(s: usize, t: usize) -> Result<Witness<T>> {
    let (s, t) = (s.min(t), s.max(t));
    if s < 2 {
        return Err(Error::InvalidParameter(format!("removal witness needs s >= 2, got {s}")));
    }
    let l = s.gcd(&t);
    let split = if l > 1 {
        BipartiteSplit::new(s / l, t / l, s, t)?
    } else {
        let d = diophantine_pair(s, t)?;
        BipartiteSplit::new(d.a_prime, d.b_prime, s, t)?
    };
    let edit = Edit::remove(0, s + split.a_in_t);
    let graph = Graph::complete_bipartite(s, t)?.with_edits(&[edit])?;
    let bipartition = Bipartition::from_vertices(s + t, split.leading_set())?;
    let score = after_crossing_removal(s * t, split.score()?, split.coverage()?)?;
    Ok(Witness { graph, edits: vec![edit], bipartition, score })
}

/// Adds one edge to `K_{s,t}` so that the returned bipartition scores
/// strictly positive, or `None` for `(1,1)`, `(1,2)`, `(1,3)` and `(2,2)`,
/// where no added edges help.
pub fn bipartite_addition_witness<T: ExactInt>(s: usize, t: usize) -> Result<Option<Witness<T>>> {
    let (s, t) = (s.min(t), s.max(t));
    if s == 0 {
        return Err(Error::InvalidParameter("both sides of K_{s,t} must be nonempty".into()));
    }
    if (s == 1 && t <= 3) || (s == 2 && t == 2) {
        return Ok(None);
    }
    let base = Graph::complete_bipartite(s, t)?;
    if s == 1 {
        // star: join two leaves and split them off
        let edit = Edit::add(1, 2);
        let t_i = t as i128;
        let score = ScoreBreakdown {
            coverage: ratio(t_i - 1, t_i + 1)?,
            degree_tax: ratio(4 + (t_i - 1) * (t_i - 1), (t_i + 1) * (t_i + 1))?,
            score: ratio(2 * t_i - 6, (t_i + 1) * (t_i + 1))?,
        };
        return Ok(Some(Witness {
            graph: base.with_edits(&[edit])?,
            edits: vec![edit],
            bipartition: Bipartition::from_vertices(t + 1, [1, 2])?,
            score,
        }));
    }

    let l = s.gcd(&t);
    let members: Vec<usize> = if l > 1 {
        // the complement of A takes s/l and t/l leading vertices
        (s / l..s).chain(s + t / l..s + t).collect()
    } else {
        let d = diophantine_pair(s, t)?;
        if d.a_prime > 1 || d.b_prime > 1 {
            (0..d.a_prime).chain(s..s + d.b_prime).collect()
        } else {
            (1..s).chain(s + 1..s + t).collect()
        }
    };
    let a_in_s = members.iter().filter(|&&v| v < s).count();
    let split = BipartiteSplit::new(a_in_s, members.len() - a_in_s, s, t)?;
    let edit = first_missing_pair(&base, &members)
        .ok_or_else(|| Error::Postcondition("no room for an edge inside A".into()))?;
    let score = after_internal_addition(s * t, split.score()?, split.coverage()?, split.edges_outside())?;
    Ok(Some(Witness {
        graph: base.with_edits(&[edit])?,
        edits: vec![edit],
        bipartition: Bipartition::from_vertices(s + t, members)?,
        score,
    }))
}

fn first_missing_pair(g: &Graph, members: &[usize]) -> Option<Edit> {
    members.iter().enumerate().find_map(|(i, &u)| {
        members[i + 1..].iter().find(|&&v| !g.has_edge(u, v)).map(|&v| Edit::add(u, v))
    })
}

/// Removes one edge from `K_{s_1,...,s_k}` where `l >= 2` divides every part
/// size. `A` takes the first `s_i / l` vertices of each part (score 0 before
/// the removal) and the removed edge is the first one leaving `A`.
pub fn multipartite_removal_witness<T: ExactInt>(part_sizes: &[usize], l: usize) -> Result<Witness<T>> {
    if part_sizes.len() < 2 {
        return Err(Error::InvalidParameter("need at least two parts".into()));
    }
    if l < 2 {
        return Err(Error::InvalidParameter(format!("common factor must be >= 2, got {l}")));
    }
    if let Some(&s) = part_sizes.iter().find(|&&s| s == 0 || s % l != 0) {
        return Err(Error::InvalidParameter(format!("{l} does not divide part size {s}")));
    }
    let base = Graph::complete_multipartite(part_sizes)?;
    let mut members = Vec::new();
    let mut offset = 0;
    for &s in part_sizes {
        members.extend(offset..offset + s / l);
        offset += s;
    }
    let edit = Edit::remove(0, part_sizes[0] + part_sizes[1] / l);
    let graph = base.with_edits(&[edit])?;
    let bipartition = Bipartition::from_vertices(base.n(), members)?;

    let l_i = l as i128;
    let q_e: Ratio<T> = ratio(1 + (l_i - 1) * (l_i - 1), l_i * l_i)?;
    let score = after_crossing_removal(base.m(), Ratio::from_integer(int(0)?), q_e)?;
    Ok(Witness { graph, edits: vec![edit], bipartition, score })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Signed;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn kn_scores() {
        assert_eq!(kn_minus_witness::<i128>(4).unwrap().score.score, r(1, 6));
        assert_eq!(kn_minus_witness::<i128>(5).unwrap().score.score, r(3, 98));
        assert_eq!(kn_minus_witness::<i128>(6).unwrap().score.score, r(1, 22));
        let w = kn_minus_witness::<i128>(4).unwrap();
        assert_eq!(w.edits, vec![Edit::remove(0, 2), Edit::remove(0, 3), Edit::remove(1, 2)]);
        assert!(kn_minus_witness::<i128>(3).is_err());
    }

    #[test]
    fn diophantine_examples() {
        let p = |s, t| diophantine_pair(s, t).unwrap();
        assert_eq!(p(2, 3), DiophantinePair { a_prime: 1, b_prime: 1 });
        assert_eq!(p(3, 5), DiophantinePair { a_prime: 2, b_prime: 3 });
        assert_eq!(p(2, 5), DiophantinePair { a_prime: 1, b_prime: 2 });
        assert!(diophantine_pair(2, 4).is_err());
        assert!(diophantine_pair(1, 4).is_err());
    }

    #[test]
    fn removal_examples() {
        assert_eq!(bipartite_removal_witness::<i128>(2, 4).unwrap().score.score, r(1, 14));
        let w = bipartite_removal_witness::<i128>(2, 3).unwrap();
        // (st-1)^2 q >= 1/st + t/s + s/t - 1
        let bound = r(1, 6) + r(3, 2) + r(2, 3) - r(1, 1);
        assert!(w.score.score * r(25, 1) >= bound);
        assert!(bipartite_removal_witness::<i128>(5, 5).unwrap().score.score.is_positive());
        assert!(bipartite_removal_witness::<i128>(1, 5).is_err());
    }

    #[test]
    fn addition_examples() {
        assert_eq!(bipartite_addition_witness::<i128>(1, 4).unwrap().unwrap().score.score, r(2, 25));
        assert_eq!(bipartite_addition_witness::<i128>(2, 4).unwrap().unwrap().score.score, r(4, 81));
        for (s, t) in [(2, 2), (1, 1), (1, 2), (1, 3)] {
            assert!(bipartite_addition_witness::<i128>(s, t).unwrap().is_none());
        }
    }

    #[test]
    fn multipartite_examples() {
        assert!(multipartite_removal_witness::<i128>(&[2, 2, 2], 2).unwrap().score.score.is_positive());
        assert_eq!(multipartite_removal_witness::<i128>(&[2, 4], 2).unwrap().score.score, r(1, 14));
        assert!(multipartite_removal_witness::<i128>(&[3, 3, 3], 3).unwrap().score.score.is_positive());
        assert!(multipartite_removal_witness::<i128>(&[2, 3], 2).is_err());
    }

    #[test]
    fn closed_form_split_score() {
        let sp = BipartiteSplit::new(1, 2, 2, 4).unwrap();
        assert_eq!(sp.score::<i128>().unwrap(), r(0, 1));
        let sp = BipartiteSplit::new(1, 1, 2, 3).unwrap();
        assert_eq!(sp.score::<i128>().unwrap(), r(-1, 72));
    }
}
