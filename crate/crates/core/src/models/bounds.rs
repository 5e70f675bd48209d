//! Existence bounds for superspecial and maximal curves.

/// Ekedahl: a superspecial curve of genus `g` in characteristic `p` needs
/// `2g <= p^2 - p`, and `2g <= p - 1` when it is hyperelliptic, except for
/// `(g, p) = (1, 2)`.
pub fn ekedahl_feasible(g: u64, p: u64, hyperelliptic: bool) -> bool {
    if (g, p) == (1, 2) {
        return true;
    }
    if hyperelliptic {
        2 * g <= p - 1
    } else {
        2 * g <= p * p - p
    }
}

/// Fuhrmann-Torres: a maximal curve of genus `g` over `F_{p^2}` needs
/// `4g <= (p-1)^2` or `2g = p^2 - p`.
pub fn ft_maximal_feasible(g: u64, p: u64) -> bool {
    4 * g <= (p - 1) * (p - 1) || 2 * g == p * p - p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ekedahl() {
        assert!(!ekedahl_feasible(4, 2, false));
        assert!(!ekedahl_feasible(4, 7, true));
        assert!(ekedahl_feasible(1, 2, true));
        assert!(ekedahl_feasible(4, 11, true));
    }

    #[test]
    fn fuhrmann_torres() {
        assert!(!ft_maximal_feasible(5, 5));
        assert!(ft_maximal_feasible(1, 3));
        // 2g = 6 is not p^2 - p = 2 and 4g > 1, so both clauses fail
        assert!(!ft_maximal_feasible(3, 2));
        assert!(ft_maximal_feasible(1, 2));
    }
}
