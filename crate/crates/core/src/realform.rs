//! Equal-rank Cartan involutions as ±1 gradings on roots.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::linalg::Q;
use crate::rootdata::{Root, RootSubsystem, RootSystem, TypeLabel, Weight};

/// θ on simple root vectors; −1 marks a noncompact simple root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EqualRankInvolution {
    pub epsilon: Vec<i64>,
}

impl EqualRankInvolution {
    pub fn new(epsilon: Vec<i64>) -> Result<Self> {
        if let Some(bad) = epsilon.iter().find(|e| e.abs() != 1) {
            return input(format!("epsilon entries must be ±1, found {bad}"));
        }
        Ok(EqualRankInvolution { epsilon })
    }

    pub fn compact(rank: usize) -> Self {
        EqualRankInvolution {
            epsilon: vec![1; rank],
        }
    }

    /// ε(Σcᵢαᵢ) = Π εᵢ^{cᵢ}.
    pub fn eps(&self, root: &Root) -> i64 {
        root.0
            .iter()
            .zip(&self.epsilon)
            .map(|(c, e)| if c.rem_euclid(2) == 1 { *e } else { 1 })
            .product()
    }

    pub fn is_compact(&self) -> bool {
        self.epsilon.iter().all(|&e| e == 1)
    }
}

#[derive(Clone, Debug)]
pub struct CartanDecomposition {
    rs: Arc<RootSystem>,
    eps: EqualRankInvolution,
    k_positive: Vec<Root>,
    p_positive: Vec<Root>,
}

impl CartanDecomposition {
    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn involution(&self) -> &EqualRankInvolution {
        &self.eps
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn k_positive(&self) -> &[Root] {
        &self.k_positive
    }

    pub fn p_positive(&self) -> &[Root] {
        &self.p_positive
    }

    pub fn k_roots(&self) -> Vec<Root> {
        self.k_positive
            .iter()
            .cloned()
            .chain(self.k_positive.iter().map(Root::neg))
            .collect()
    }

    pub fn p_roots(&self) -> Vec<Root> {
        self.p_positive
            .iter()
            .cloned()
            .chain(self.p_positive.iter().map(Root::neg))
            .collect()
    }

    pub fn k_dim(&self) -> usize {
        self.rs.rank() + 2 * self.k_positive.len()
    }

    pub fn p_dim(&self) -> usize {
        2 * self.p_positive.len()
    }

    pub fn is_compact_root(&self, root: &Root) -> bool {
        self.eps.eps(root) == 1
    }
}

pub fn cartan_decomposition(
    rs: Arc<RootSystem>,
    eps: &EqualRankInvolution,
) -> Result<CartanDecomposition> {
    if eps.epsilon.len() != rs.rank() {
        return input(format!(
            "epsilon has length {}, expected {} for {}",
            eps.epsilon.len(),
            rs.rank(),
            rs.name()
        ));
    }
    let (k_positive, p_positive): (Vec<Root>, Vec<Root>) = rs
        .positive_roots()
        .iter()
        .cloned()
        .partition(|r| eps.eps(r) == 1);
    Ok(CartanDecomposition {
        rs,
        eps: eps.clone(),
        k_positive,
        p_positive,
    })
}

/// Root datum of K with the Borel inherited from the ambient positives.
#[derive(Clone, Debug)]
pub struct KRootDatum {
    sub: RootSubsystem,
}

impl KRootDatum {
    pub fn subsystem(&self) -> &RootSubsystem {
        &self.sub
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        self.sub.positive_roots()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        self.sub.simple_roots()
    }

    pub fn two_rho_k(&self) -> &Weight {
        self.sub.two_rho()
    }

    /// ρ_K in fundamental-weight coordinates.
    pub fn rho_k(&self) -> Vec<Q> {
        self.sub.rho()
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.sub.is_dominant(w)
    }
}

pub fn k_root_datum(cd: &CartanDecomposition) -> Result<KRootDatum> {
    let sub = RootSubsystem::new(cd.rs.clone(), &cd.k_positive)?;
    // inherited positives: no two of them may sum to zero
    let pos = sub.positive_roots();
    if pos.iter().any(|r| !r.is_positive()) {
        return Err(Error::Consistency(
            "inherited K positives contain a negative root".into(),
        ));
    }
    Ok(KRootDatum { sub })
}

/// A named or explicitly specified equal-rank real form.
#[derive(Clone, Debug)]
pub struct RealForm {
    pub name: String,
    pub rs: Arc<RootSystem>,
    pub eps: EqualRankInvolution,
}

impl RealForm {
    pub fn from_parts(label: TypeLabel, rank: usize, epsilon: Vec<i64>) -> Result<Self> {
        let rs = Arc::new(RootSystem::new(label, rank)?);
        let eps = EqualRankInvolution::new(epsilon)?;
        if eps.epsilon.len() != rank {
            return input(format!(
                "epsilon has length {}, expected {rank}",
                eps.epsilon.len()
            ));
        }
        let signs: Vec<String> = eps
            .epsilon
            .iter()
            .map(|e| if *e > 0 { "+".into() } else { "-".into() })
            .collect();
        let name = format!("{}[{}]", rs.name(), signs.join(""));
        Ok(RealForm { name, rs, eps })
    }

    pub fn decomposition(&self) -> CartanDecomposition {
        cartan_decomposition(self.rs.clone(), &self.eps).expect("validated on construction")
    }
}

/// Configuration accepted by the front end: either `{"form": name}` or
/// `{"type": "A", "rank": 2, "epsilon": [-1, -1]}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FormConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub type_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<i64>>,
}

impl FormConfig {
    pub fn named(name: &str) -> Self {
        FormConfig {
            form: Some(name.to_string()),
            ..Default::default()
        }
    }

    pub fn resolve(&self) -> Result<RealForm> {
        match (&self.form, &self.type_label) {
            (Some(name), None) => standard_form_catalog(name),
            (None, Some(t)) => {
                let label: TypeLabel = t.parse()?;
                let rank = self
                    .rank
                    .ok_or_else(|| Error::Input("`rank` is required with `type`".into()))?;
                let eps = self
                    .epsilon
                    .clone()
                    .ok_or_else(|| Error::Input("`epsilon` is required with `type`".into()))?;
                RealForm::from_parts(label, rank, eps)
            }
            (Some(_), Some(_)) => input("give either a form name or type/rank/epsilon, not both"),
            (None, None) => input("no real form given"),
        }
    }
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'ℝ' => 'r',
            'ℍ' => 'h',
            'ℂ' => 'c',
            c => c.to_ascii_lowercase(),
        })
        .collect()
}

fn args(s: &str, prefix: &str) -> Option<Vec<String>> {
    let inner = s
        .strip_prefix(prefix)?
        .strip_prefix('(')?
        .strip_suffix(')')?;
    Some(inner.split(',').map(str::to_string).collect())
}

fn num(s: &str) -> Option<usize> {
    s.parse().ok()
}

fn out_of_scope(name: &str, reason: &str) -> Error {
    Error::OutOfScope {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

fn signs_to_eps(signs: &[i64]) -> Vec<i64> {
    signs.windows(2).map(|w| w[0] * w[1]).collect()
}

/// The catalog of named equal-rank forms:
///
/// | name       | type    | ε                                 |
/// |------------|---------|-----------------------------------|
/// | su(p,q)    | A_{p+q−1} | from signs (+^p, −^q); su(2,1) uses (+,−,+) |
/// | su(n)      | A_{n−1} | all +1                            |
/// | sp(2n,R)   | C_n     | (+1, …, +1, −1)                   |
/// | sp(p,q)    | C_{p+q} | εᵢ = dᵢdᵢ₊₁ for d = (+^p, −^q), εₙ = +1 |
/// | sp(n)      | C_n     | all +1                            |
/// | so*(2n)    | D_n     | (+1, …, +1, −1)                   |
pub fn standard_form_catalog(name: &str) -> Result<RealForm> {
    let n = normalize(name);
    let build = |label: TypeLabel, rank: usize, eps: Vec<i64>| -> Result<RealForm> {
        let mut f = RealForm::from_parts(label, rank, eps)?;
        f.name = n.clone();
        Ok(f)
    };
    if let Some(a) = args(&n, "so*") {
        let m = a
            .first()
            .and_then(|x| num(x))
            .filter(|m| a.len() == 1 && m % 2 == 0 && *m >= 6);
        let Some(m) = m else {
            return input(format!("so*(2n) needs an even argument ≥ 6, got `{name}`"));
        };
        let r = m / 2;
        let mut eps = vec![1; r];
        eps[r - 1] = -1;
        return build(TypeLabel::D, r, eps);
    }
    if let Some(a) = args(&n, "su") {
        return match a.as_slice() {
            [p, q] => {
                let (Some(p), Some(q)) = (num(p), num(q)) else {
                    return input(format!("cannot parse `{name}`"));
                };
                if p + q < 2 {
                    return input(format!("su(p,q) needs p + q ≥ 2, got `{name}`"));
                }
                let signs: Vec<i64> = if (p, q) == (2, 1) {
                    vec![1, -1, 1]
                } else {
                    std::iter::repeat_n(1, p)
                        .chain(std::iter::repeat_n(-1, q))
                        .collect()
                };
                build(TypeLabel::A, p + q - 1, signs_to_eps(&signs))
            }
            [m] => match num(m).filter(|m| *m >= 2) {
                Some(m) => build(TypeLabel::A, m - 1, vec![1; m - 1]),
                None => input(format!("su(n) needs n ≥ 2, got `{name}`")),
            },
            _ => input(format!("cannot parse `{name}`")),
        };
    }
    if let Some(a) = args(&n, "sp") {
        return match a.as_slice() {
            [m, field] if field == "r" => {
                let r = num(m).filter(|m| m % 2 == 0 && *m >= 4).map(|m| m / 2);
                let Some(r) = r else {
                    return input(format!("sp(2n,R) needs an even argument ≥ 4, got `{name}`"));
                };
                let mut eps = vec![1; r];
                eps[r - 1] = -1;
                build(TypeLabel::C, r, eps)
            }
            [_, field] if field == "c" => Err(out_of_scope(
                name,
                "complex groups viewed as real groups are not equal rank",
            )),
            [p, q] => {
                let (Some(p), Some(q)) = (num(p), num(q)) else {
                    return input(format!("cannot parse `{name}`"));
                };
                let r = p + q;
                if r < 2 {
                    return input(format!("sp(p,q) needs p + q ≥ 2, got `{name}`"));
                }
                let d: Vec<i64> = std::iter::repeat_n(1, p)
                    .chain(std::iter::repeat_n(-1, q))
                    .collect();
                let mut eps = signs_to_eps(&d);
                eps.push(1);
                build(TypeLabel::C, r, eps)
            }
            [m] => match num(m).filter(|m| *m >= 2) {
                Some(m) => build(TypeLabel::C, m, vec![1; m]),
                None => input(format!("sp(n) needs n ≥ 2, got `{name}`")),
            },
            _ => input(format!("cannot parse `{name}`")),
        };
    }
    let non_equal_rank = [
        "sl(", "su*(", "gl(", "so(", "pgl(", "psl(", "e6", "e7", "e8", "f4", "g2",
    ];
    if non_equal_rank.iter().any(|p| n.starts_with(p)) {
        let reason = if n.starts_with("sl(")
            || n.starts_with("su*(")
            || n.starts_with("gl(")
            || n.starts_with("psl(")
        {
            "not an equal-rank real form"
        } else {
            "not in the catalog of equal-rank classical forms"
        };
        return Err(out_of_scope(name, reason));
    }
    Err(Error::UnknownForm(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_frac;

    #[test]
    fn su11_and_su21() {
        let f = standard_form_catalog("su(1,1)").unwrap();
        assert_eq!(
            (f.rs.label(), f.eps.epsilon.clone()),
            (TypeLabel::A, vec![-1])
        );
        let cd = f.decomposition();
        assert_eq!((cd.k_dim(), cd.p_dim()), (1, 2));
        assert!(k_root_datum(&cd).unwrap().positive_roots().is_empty());

        let f = standard_form_catalog("su(2,1)").unwrap();
        assert_eq!(f.eps.epsilon, vec![-1, -1]);
        let cd = f.decomposition();
        assert_eq!(cd.k_positive(), &[Root(vec![1, 1])]);
        assert_eq!((cd.k_dim(), cd.p_dim()), (4, 4));
        let kd = k_root_datum(&cd).unwrap();
        // ρ_K = (α₁+α₂)/2 = (ω₁+ω₂)/2
        assert_eq!(kd.rho_k(), vec![q_frac(1, 2), q_frac(1, 2)]);
    }

    #[test]
    fn compact_a2_is_full() {
        let f = RealForm::from_parts(TypeLabel::A, 2, vec![1, 1]).unwrap();
        let kd = k_root_datum(&f.decomposition()).unwrap();
        assert_eq!(kd.positive_roots().len(), 3);
        assert_eq!(kd.two_rho_k(), &Weight(vec![2, 2]));
        let f = RealForm::from_parts(TypeLabel::A, 1, vec![1]).unwrap();
        let cd = f.decomposition();
        assert_eq!((cd.k_roots().len(), cd.p_roots().len()), (2, 0));
    }

    #[test]
    fn catalog_entries() {
        assert_eq!(
            standard_form_catalog("su(2,2)").unwrap().eps.epsilon,
            vec![1, -1, 1]
        );
        let f = standard_form_catalog("sp(4,R)").unwrap();
        assert_eq!(
            (f.rs.label(), f.eps.epsilon.clone()),
            (TypeLabel::C, vec![1, -1])
        );
        assert_eq!(
            standard_form_catalog("sp(4, ℝ)").unwrap().eps.epsilon,
            vec![1, -1]
        );
        let f = standard_form_catalog("sp(1,1)").unwrap();
        assert_eq!(f.eps.epsilon, vec![-1, 1]);
        let f = standard_form_catalog("so*(8)").unwrap();
        assert_eq!(
            (f.rs.label(), f.eps.epsilon.clone()),
            (TypeLabel::D, vec![1, 1, 1, -1])
        );
    }

    #[test]
    fn catalog_errors() {
        assert!(matches!(
            standard_form_catalog("sl(3,R)"),
            Err(Error::OutOfScope { .. })
        ));
        assert!(matches!(
            standard_form_catalog("sl(2,H)"),
            Err(Error::OutOfScope { .. })
        ));
        assert!(matches!(
            standard_form_catalog("sp(4,C)"),
            Err(Error::OutOfScope { .. })
        ));
        assert!(matches!(
            standard_form_catalog("foo(1)"),
            Err(Error::UnknownForm(_))
        ));
        assert!(standard_form_catalog("so*(5)").is_err());
    }

    #[test]
    fn config_parsing() {
        let c: FormConfig =
            serde_json::from_str(r#"{"type":"A","rank":2,"epsilon":[-1,-1]}"#).unwrap();
        assert_eq!(c.resolve().unwrap().eps.epsilon, vec![-1, -1]);
        let c: FormConfig = serde_json::from_str(r#"{"form":"su(2,1)"}"#).unwrap();
        assert_eq!(c.resolve().unwrap().rs.rank(), 2);
        let c: FormConfig =
            serde_json::from_str(r#"{"type":"A","rank":2,"epsilon":[-1]}"#).unwrap();
        assert!(c.resolve().is_err());
    }
}
