/// A step budget for rewriting. Exhaustion is reported, never silently
/// turned into an answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fuel(pub usize);

impl Fuel {
    pub const DEFAULT: Fuel = Fuel(10_000);

    pub fn remaining(self) -> usize {
        self.0
    }
}

impl Default for Fuel {
    fn default() -> Fuel {
        Fuel::DEFAULT
    }
}
