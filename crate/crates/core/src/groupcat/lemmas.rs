use super::{GeneratedGroup, GroupError, GroupKind};
use crate::exactalg::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(String),
    Exempt(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        !matches!(self, Check::Fail(_))
    }
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub sum: Scalar,
    /// `Σ g = 0` unless `G = {1}`.
    pub sum_zero: Check,
    /// `|G| · 1 ≠ 0` in `D`.
    pub order_nonzero: Check,
    /// In characteristic `p`, no element of multiplicative order `p`.
    pub no_order_p: Check,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.sum_zero.passed() && self.order_nonzero.passed() && self.no_order_p.passed()
    }
}

pub fn lemma_checks(g: &GeneratedGroup) -> Result<LemmaReport, GroupError> {
    if g.kind() != GroupKind::Multiplicative {
        return Err(GroupError::WrongKind { expected: GroupKind::Multiplicative, got: g.kind() });
    }
    let field = g.field();
    let mut sum = field.zero();
    for x in g.multipliers() {
        sum = &sum + &x;
    }
    let sum_zero = if g.order() == 1 {
        Check::Exempt("|G| = 1".into())
    } else if sum.is_zero() {
        Check::Pass
    } else {
        Check::Fail(format!("sum is {sum}"))
    };
    let n = field.from_int(g.order() as i64);
    let order_nonzero = if n.is_zero() {
        Check::Fail(format!("{}·1 = 0", g.order()))
    } else {
        Check::Pass
    };
    let p = field.characteristic();
    let no_order_p = if p == 0 {
        Check::Exempt("characteristic 0".into())
    } else {
        match (0..g.order()).find(|&i| g.element_order(i) as u64 == p) {
            Some(i) => Check::Fail(format!("element {i} has order {p}")),
            None => Check::Pass,
        }
    };
    Ok(LemmaReport { sum, sum_zero, order_nonzero, no_order_p })
}

/// Scans `F_q^*` for an element of multiplicative order `p`; `None` for
/// infinite fields.
pub fn field_has_element_of_order_p(field: &Field) -> Option<bool> {
    let p = field.characteristic();
    let elements = field.elements()?;
    Some(elements.iter().skip(1).any(|x| x.multiplicative_order(p) == Some(p)))
}
