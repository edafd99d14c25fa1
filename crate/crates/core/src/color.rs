use std::fmt;

/// Edge colors are 1-based, drawn from the palette `[q]`.
pub type Color = u16;

/// Largest palette a [`ColorSet`] can hold.
pub const MAX_COLORS: usize = 64;

/// A subset of the palette, bit `c - 1` set for color `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn full(q: usize) -> Self {
        assert!(q <= MAX_COLORS, "palette of {q} colors exceeds {MAX_COLORS}");
        if q == 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << q) - 1)
        }
    }

    pub fn single(c: Color) -> Self {
        ColorSet(1u64 << (c - 1))
    }

    pub fn from_bits(bits: u64) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Every color of `[q]` except `c`.
    pub fn avoiding(q: usize, c: Color) -> Self {
        Self::full(q).without(c)
    }

    pub fn with(self, c: Color) -> Self {
        ColorSet(self.0 | (1u64 << (c - 1)))
    }

    pub fn without(self, c: Color) -> Self {
        ColorSet(self.0 & !(1u64 << (c - 1)))
    }

    pub fn contains(self, c: Color) -> bool {
        c >= 1 && (c as usize) <= MAX_COLORS && self.0 & (1u64 << (c - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        (0..MAX_COLORS as u16).filter(move |k| self.0 & (1u64 << k) != 0).map(|k| k + 1)
    }

    /// All `r`-element subsets of `[q]`, in increasing bit order.
    pub fn subsets_of_size(q: usize, r: usize) -> Vec<ColorSet> {
        let full = Self::full(q).0;
        let mut out = Vec::new();
        let mut mask = full;
        // walk every submask of `full` and keep the ones of the right weight
        loop {
            if mask.count_ones() as usize == r {
                out.push(ColorSet(mask));
            }
            if mask == 0 {
                break;
            }
            mask = (mask - 1) & full;
        }
        out.reverse();
        out
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        iter.into_iter().fold(ColorSet::EMPTY, ColorSet::with)
    }
}

/// Serialized as the ascending list of member colors.
impl serde::Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}
