use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One of the three cusp families: cusps on the lines `r = 0`, `s = 0`,
/// `t = 0` of the dual plane.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    R,
    S,
    T,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::R, Family::S, Family::T];

    pub fn name(self) -> &'static str {
        match self {
            Family::R => "r",
            Family::S => "s",
            Family::T => "t",
        }
    }

    fn parse(s: &str) -> Option<Family> {
        match s {
            "r" => Some(Family::R),
            "s" => Some(Family::S),
            "t" => Some(Family::T),
            _ => None,
        }
    }
}

/// Sign of a conic component.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Name of one of the 43 divisor classes.
///
/// `Theta(v, e, w)` is the component with `omega = zeta^w` above the cusp
/// whose coordinate is `zeta^e` times the base root of family `v`
/// (`alpha`, `beta`, `gamma`). `Dline(v, w)` is a component above the line
/// `v = 0`. `Dconic(i, j, sign)` is a component above the conic attached to
/// `(zeta^i alpha, zeta^j beta)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GenLabel {
    H,
    Theta(Family, u8, u8),
    Dline(Family, u8),
    Dconic(u8, u8, Sign),
}

fn m3(x: i64) -> u8 {
    x.rem_euclid(3) as u8
}

impl GenLabel {
    /// All 43 labels in catalog order.
    pub fn all() -> Vec<GenLabel> {
        let mut out = vec![GenLabel::H];
        for v in Family::ALL {
            for e in 0..3 {
                for w in 1..=2 {
                    out.push(GenLabel::Theta(v, e, w));
                }
            }
        }
        for v in Family::ALL {
            for w in 1..=2 {
                out.push(GenLabel::Dline(v, w));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                for s in [Sign::Plus, Sign::Minus] {
                    out.push(GenLabel::Dconic(i, j, s));
                }
            }
        }
        out
    }

    /// Intersection number of two classes.
    pub fn pairing(self, other: GenLabel) -> i64 {
        use GenLabel::*;
        match (self, other) {
            (H, H) => 2,
            (H, Dline(..)) | (Dline(..), H) => 1,
            (H, Theta(..)) | (Theta(..), H) => 0,
            (H, Dconic(..)) | (Dconic(..), H) => 2,
            (Theta(v, e, w), Theta(v2, e2, w2)) => {
                if (v, e) != (v2, e2) {
                    0
                } else if w == w2 {
                    -2
                } else {
                    1
                }
            }
            (Dline(v, w), Dline(v2, w2)) => {
                if (v, w) == (v2, w2) {
                    -2
                } else if v != v2 && w != w2 {
                    1
                } else {
                    0
                }
            }
            (Dconic(i, j, s), Dconic(i2, j2, s2)) => {
                if s != s2 {
                    0
                } else if (i, j) == (i2, j2) {
                    -2
                } else {
                    let di = m3(i2 as i64 - i as i64);
                    let dj = m3(j2 as i64 - j as i64);
                    i64::from(di == dj && di != 0)
                }
            }
            (Dline(v, w), Theta(v2, _, w2)) | (Theta(v2, _, w2), Dline(v, w)) => {
                i64::from(v == v2 && w == w2)
            }
            (Dline(..), Dconic(..)) | (Dconic(..), Dline(..)) => 0,
            (Dconic(i, j, s), Theta(v, e, w)) | (Theta(v, e, w), Dconic(i, j, s)) => {
                let x = match v {
                    Family::R => i as i64,
                    Family::S => j as i64,
                    Family::T => -(i as i64 + j as i64),
                };
                i64::from(m3(x - e as i64 - s.as_i64() * w as i64) == 0)
            }
        }
    }

    pub fn rho(self) -> GenLabel {
        use GenLabel::*;
        match self {
            Theta(Family::R, e, w) => Theta(Family::R, m3(e as i64 + 1), w),
            Theta(Family::T, e, w) => Theta(Family::T, m3(e as i64 + 2), w),
            Dconic(i, j, s) => Dconic(m3(i as i64 + 1), j, s),
            l => l,
        }
    }

    pub fn sigma(self) -> GenLabel {
        use GenLabel::*;
        match self {
            Theta(Family::S, e, w) => Theta(Family::S, m3(e as i64 + 1), w),
            Theta(Family::T, e, w) => Theta(Family::T, m3(e as i64 + 2), w),
            Dconic(i, j, s) => Dconic(i, m3(j as i64 + 1), s),
            l => l,
        }
    }

    pub fn tau(self) -> GenLabel {
        use GenLabel::*;
        let d = |x: u8| m3(2 * x as i64);
        match self {
            H => H,
            Theta(v, e, w) => Theta(v, d(e), d(w)),
            Dline(v, w) => Dline(v, d(w)),
            Dconic(i, j, s) => Dconic(d(i), d(j), s),
        }
    }
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::H => f.write_str("H"),
            GenLabel::Theta(v, e, w) => write!(f, "Theta({},{e},{w})", v.name()),
            GenLabel::Dline(v, w) => write!(f, "Dline({},{w})", v.name()),
            GenLabel::Dconic(i, j, s) => {
                write!(f, "Dconic({i},{j},{})", if *s == Sign::Plus { '+' } else { '-' })
            }
        }
    }
}

impl FromStr for GenLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse { offset: 0, message: format!("unknown label `{s}`") };
        if s == "H" {
            return Ok(GenLabel::H);
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let args: Vec<&str> = rest.strip_suffix(')').ok_or_else(bad)?.split(',').collect();
        let digit = |a: &str, hi: u8| a.parse::<u8>().ok().filter(|&x| x <= hi).ok_or_else(bad);
        let label = match (head, args.as_slice()) {
            ("Theta", [v, e, w]) => {
                let w = digit(w, 2)?;
                if w == 0 {
                    return Err(bad());
                }
                GenLabel::Theta(Family::parse(v).ok_or_else(bad)?, digit(e, 2)?, w)
            }
            ("Dline", [v, w]) => {
                let w = digit(w, 2)?;
                if w == 0 {
                    return Err(bad());
                }
                GenLabel::Dline(Family::parse(v).ok_or_else(bad)?, w)
            }
            ("Dconic", [i, j, e]) => {
                let sign = match *e {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    _ => return Err(bad()),
                };
                GenLabel::Dconic(digit(i, 2)?, digit(j, 2)?, sign)
            }
            _ => return Err(bad()),
        };
        Ok(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let all = GenLabel::all();
        assert_eq!(all.len(), 43);
        for l in &all {
            assert_eq!(l.to_string().parse::<GenLabel>().unwrap(), *l);
            assert_eq!(l.pairing(*l) % 2, 0);
        }
    }

    #[test]
    fn table_entries() {
        use Family::*;
        assert_eq!(GenLabel::H.pairing(GenLabel::H), 2);
        assert_eq!(GenLabel::Dline(R, 1).pairing(GenLabel::Theta(R, 0, 1)), 1);
        assert_eq!(
            GenLabel::Dconic(0, 0, Sign::Plus).pairing(GenLabel::Dconic(1, 0, Sign::Minus)),
            0
        );
    }

    #[test]
    fn generator_images() {
        use Family::*;
        assert_eq!(GenLabel::Theta(R, 0, 1).rho(), GenLabel::Theta(R, 1, 1));
        assert_eq!(GenLabel::Dline(R, 1).tau(), GenLabel::Dline(R, 2));
    }
}
