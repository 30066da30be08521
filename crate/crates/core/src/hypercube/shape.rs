/// Equality pattern of a component index `(a, b, c, d)`, drawn as a square
/// with `a` top-left, `b` bottom-left, `c` top-right and `d` bottom-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentClass {
    AllDistinct,
    TwoEqualRight,
    TwoEqualLeft,
    TwoEqualTop,
    TwoEqualBottom,
    TwoEqualAntiDiagonal,
    TwoEqualDiagonal,
    OneDifferentBottomRight,
    OneDifferentBottomLeft,
    OneDifferentTopLeft,
    OneDifferentTopRight,
    TwoAndTwoVertical,
    TwoAndTwoHorizontal,
    TwoAndTwoDiagonal,
    AllEqual,
}

impl ComponentClass {
    pub const ALL: [ComponentClass; 15] = [
        Self::AllDistinct,
        Self::TwoEqualRight,
        Self::TwoEqualLeft,
        Self::TwoEqualTop,
        Self::TwoEqualBottom,
        Self::TwoEqualAntiDiagonal,
        Self::TwoEqualDiagonal,
        Self::OneDifferentBottomRight,
        Self::OneDifferentBottomLeft,
        Self::OneDifferentTopLeft,
        Self::OneDifferentTopRight,
        Self::TwoAndTwoVertical,
        Self::TwoAndTwoHorizontal,
        Self::TwoAndTwoDiagonal,
        Self::AllEqual,
    ];

    /// Restricted growth string: first occurrences are numbered 0, 1, 2, ...
    pub fn pattern(self) -> [u8; 4] {
        match self {
            Self::AllDistinct => [0, 1, 2, 3],
            Self::TwoEqualRight => [0, 1, 2, 2],
            Self::TwoEqualLeft => [0, 0, 1, 2],
            Self::TwoEqualTop => [0, 1, 0, 2],
            Self::TwoEqualBottom => [0, 1, 2, 1],
            Self::TwoEqualAntiDiagonal => [0, 1, 1, 2],
            Self::TwoEqualDiagonal => [0, 1, 2, 0],
            Self::OneDifferentBottomRight => [0, 0, 0, 1],
            Self::OneDifferentBottomLeft => [0, 1, 0, 0],
            Self::OneDifferentTopLeft => [0, 1, 1, 1],
            Self::OneDifferentTopRight => [0, 0, 1, 0],
            Self::TwoAndTwoVertical => [0, 0, 1, 1],
            Self::TwoAndTwoHorizontal => [0, 1, 0, 1],
            Self::TwoAndTwoDiagonal => [0, 1, 1, 0],
            Self::AllEqual => [0, 0, 0, 0],
        }
    }

    pub fn of(index: [usize; 4]) -> Self {
        let mut seen = [usize::MAX; 4];
        let mut rgs = [0u8; 4];
        let mut next = 0u8;
        for (slot, &v) in index.iter().enumerate() {
            rgs[slot] = match seen[..next as usize].iter().position(|&s| s == v) {
                Some(p) => p as u8,
                None => {
                    seen[next as usize] = v;
                    next += 1;
                    next - 1
                }
            };
        }
        Self::ALL
            .into_iter()
            .find(|c| c.pattern() == rgs)
            .expect("the 15 patterns are exhaustive")
    }

    pub fn distinct_values(self) -> usize {
        self.pattern().iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::AllDistinct => "all_distinct",
            Self::TwoEqualRight => "two_equal_right",
            Self::TwoEqualLeft => "two_equal_left",
            Self::TwoEqualTop => "two_equal_top",
            Self::TwoEqualBottom => "two_equal_bottom",
            Self::TwoEqualAntiDiagonal => "two_equal_anti_diagonal",
            Self::TwoEqualDiagonal => "two_equal_diagonal",
            Self::OneDifferentBottomRight => "one_different_bottom_right",
            Self::OneDifferentBottomLeft => "one_different_bottom_left",
            Self::OneDifferentTopLeft => "one_different_top_left",
            Self::OneDifferentTopRight => "one_different_top_right",
            Self::TwoAndTwoVertical => "two_and_two_vertical",
            Self::TwoAndTwoHorizontal => "two_and_two_horizontal",
            Self::TwoAndTwoDiagonal => "two_and_two_diagonal",
            Self::AllEqual => "all_equal",
        }
    }

    /// Number of index tuples over `k` values with this pattern: `k (k-1) ... `
    /// with one factor per distinct value.
    pub fn count(self, k: usize) -> usize {
        (0..self.distinct_values()).map(|i| k.saturating_sub(i)).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_are_distinct_restricted_growth_strings() {
        for (i, a) in ComponentClass::ALL.iter().enumerate() {
            let p = a.pattern();
            assert_eq!(ComponentClass::of(p.map(usize::from)), *a);
            for b in &ComponentClass::ALL[i + 1..] {
                assert_ne!(p, b.pattern());
            }
        }
    }

    #[test]
    fn distinct_value_histogram() {
        let mut h = [0usize; 5];
        for c in ComponentClass::ALL {
            h[c.distinct_values()] += 1;
        }
        assert_eq!(h, [0, 1, 7, 6, 1]);
    }

    #[test]
    fn counts_sum_to_k_to_the_fourth() {
        for k in 0..8 {
            let total: usize = ComponentClass::ALL.iter().map(|c| c.count(k)).sum();
            assert_eq!(total, k.pow(4));
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(ComponentClass::of([3, 3, 7, 7]), ComponentClass::TwoAndTwoVertical);
        assert_eq!(ComponentClass::of([5, 2, 2, 5]), ComponentClass::TwoAndTwoDiagonal);
        assert_eq!(ComponentClass::of([1, 0, 1, 2]), ComponentClass::TwoEqualTop);
        assert_eq!(ComponentClass::of([4, 4, 4, 4]), ComponentClass::AllEqual);
    }
}
