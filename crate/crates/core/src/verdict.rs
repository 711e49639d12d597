/// Outcome of an exhaustive check: either it passed everywhere, or it
/// failed and carries the first witness found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    /// `Pass` when `failure` is `None`.
    pub fn from_failure(failure: Option<W>) -> Self {
        match failure {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail(w),
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn map<V, F: FnOnce(W) -> V>(self, f: F) -> Verdict<V> {
        match self {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(w) => Verdict::Fail(f(w)),
        }
    }

    /// Keeps the first failure of `self` and `next`.
    pub fn and_then<F: FnOnce() -> Verdict<W>>(self, next: F) -> Verdict<W> {
        match self {
            Verdict::Pass => next(),
            fail => fail,
        }
    }
}
