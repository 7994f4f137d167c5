use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_field::ExtensionKind;

/// A group on the standard apartment of `GL_N(E₀)`.
///
/// `Sp`, `SoOdd` and `U` are realized as the fixed points of θ (with the
/// form `J_N`); `SoEven` uses the split form with all-ones anti-diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GroupType {
    /// `GL_N(E)`; `ext` quadratic means `Res_{E/F} GL_N`.
    Gl { n: usize, ext: ExtensionKind },
    /// `Sp_{2n}`.
    Sp { n: usize },
    /// `SO_{2n+1}`.
    SoOdd { n: usize },
    /// `SO_{2n}`.
    SoEven { n: usize },
    /// `U_{E/F}(N)` with `E/F` unramified or ramified.
    U { n: usize, ext: ExtensionKind },
}

impl GroupType {
    /// Size `N` of the defining matrices.
    pub fn matrix_size(&self) -> usize {
        match *self {
            GroupType::Gl { n, .. } | GroupType::U { n, .. } => n,
            GroupType::Sp { n } | GroupType::SoEven { n } => 2 * n,
            GroupType::SoOdd { n } => 2 * n + 1,
        }
    }

    /// The rank parameter appearing in the root tables (`n` for classical
    /// groups, `N` for `GL`).
    pub fn rank_param(&self) -> usize {
        match *self {
            GroupType::Gl { n, .. } => n,
            GroupType::U { n, .. } => n / 2,
            GroupType::Sp { n } | GroupType::SoOdd { n } | GroupType::SoEven { n } => n,
        }
    }

    pub fn ext(&self) -> ExtensionKind {
        match *self {
            GroupType::Gl { ext, .. } | GroupType::U { ext, .. } => ext,
            _ => ExtensionKind::Trivial,
        }
    }

    pub fn is_classical(&self) -> bool {
        !matches!(self, GroupType::Gl { .. })
    }

    /// Parses `family:size`, e.g. `gl:3`, `sp:4`, `so:5`, `u-ram:3`.
    /// Sizes are matrix sizes; `gl` and `u` take their extension from `ext`.
    pub fn parse(spec: &str, ext: ExtensionKind) -> Result<Self> {
        let bad = || Error::Config(format!("unknown group spec `{spec}`"));
        let (fam, size) = spec.trim().split_once(':').ok_or_else(bad)?;
        let size: usize = size.trim().parse().map_err(|_| bad())?;
        if size == 0 {
            return Err(bad());
        }
        let quad = |e: ExtensionKind| {
            if e.is_quadratic() {
                Ok(e)
            } else {
                Err(Error::Config(format!("`{spec}` needs a quadratic extension")))
            }
        };
        match fam.trim().to_ascii_lowercase().as_str() {
            "gl" => Ok(GroupType::Gl { n: size, ext }),
            "sp" if size % 2 == 0 => Ok(GroupType::Sp { n: size / 2 }),
            "so" if size % 2 == 1 => Ok(GroupType::SoOdd { n: size / 2 }),
            "so" => Ok(GroupType::SoEven { n: size / 2 }),
            "u" => Ok(GroupType::U { n: size, ext: quad(ext)? }),
            "u-ram" => Ok(GroupType::U { n: size, ext: ExtensionKind::Ramified }),
            "u-unram" => Ok(GroupType::U { n: size, ext: ExtensionKind::Unramified }),
            _ => Err(bad()),
        }
    }

    /// The spec string accepted by [`GroupType::parse`].
    pub fn spec(&self) -> String {
        match *self {
            GroupType::Gl { n, .. } => format!("gl:{n}"),
            GroupType::Sp { n } => format!("sp:{}", 2 * n),
            GroupType::SoOdd { n } => format!("so:{}", 2 * n + 1),
            GroupType::SoEven { n } => format!("so:{}", 2 * n),
            GroupType::U { n, ext: ExtensionKind::Ramified } => format!("u-ram:{n}"),
            GroupType::U { n, .. } => format!("u-unram:{n}"),
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupType::Gl { n, ext: ExtensionKind::Trivial } => write!(f, "GL({n})"),
            GroupType::Gl { n, ext } => write!(f, "Res GL({n}) [{ext}]"),
            GroupType::Sp { n } => write!(f, "Sp({})", 2 * n),
            GroupType::SoOdd { n } => write!(f, "SO({})", 2 * n + 1),
            GroupType::SoEven { n } => write!(f, "SO({})", 2 * n),
            GroupType::U { n, ext } => write!(f, "U({n}) [{ext}]"),
        }
    }
}

/// The four endoscopic configurations `(G, G_θ, H)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndoscopicCase {
    /// `GL_{2n+1}`, `G_θ = SO_{2n+1}`, `H = Sp_{2n}`.
    OddOrthogonal { n: usize },
    /// `GL_{2n}`, `G_θ = Sp_{2n}`, `H = SO_{2n+1}`.
    SymplecticOdd { n: usize },
    /// `GL_{2n}`, `G_θ = Sp_{2n}`, `H = SO_{2n}`.
    SymplecticEven { n: usize },
    /// `Res_{E/F} GL_N`, `G_θ = H = U_{E/F}(N)`.
    Unitary { n: usize, ext: ExtensionKind },
}

impl EndoscopicCase {
    /// Case number 1–4.
    pub fn number(&self) -> u8 {
        match self {
            EndoscopicCase::OddOrthogonal { .. } => 1,
            EndoscopicCase::SymplecticOdd { .. } => 2,
            EndoscopicCase::SymplecticEven { .. } => 3,
            EndoscopicCase::Unitary { .. } => 4,
        }
    }

    /// Builds case `number` with rank parameter `rank` (`n`, or `N` for
    /// the unitary case).
    pub fn new(number: u8, rank: usize, ext: ExtensionKind) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Config("rank must be positive".into()));
        }
        match number {
            1 => Ok(EndoscopicCase::OddOrthogonal { n: rank }),
            2 => Ok(EndoscopicCase::SymplecticOdd { n: rank }),
            3 => Ok(EndoscopicCase::SymplecticEven { n: rank }),
            4 if ext.is_quadratic() => Ok(EndoscopicCase::Unitary { n: rank, ext }),
            4 => Err(Error::Config("case 4 needs a quadratic extension".into())),
            _ => Err(Error::Config(format!("no endoscopic case {number}"))),
        }
    }

    pub fn g(&self) -> GroupType {
        match *self {
            EndoscopicCase::OddOrthogonal { n } => GroupType::Gl { n: 2 * n + 1, ext: ExtensionKind::Trivial },
            EndoscopicCase::SymplecticOdd { n } | EndoscopicCase::SymplecticEven { n } => {
                GroupType::Gl { n: 2 * n, ext: ExtensionKind::Trivial }
            }
            EndoscopicCase::Unitary { n, ext } => GroupType::Gl { n, ext },
        }
    }

    pub fn g_theta(&self) -> GroupType {
        match *self {
            EndoscopicCase::OddOrthogonal { n } => GroupType::SoOdd { n },
            EndoscopicCase::SymplecticOdd { n } | EndoscopicCase::SymplecticEven { n } => GroupType::Sp { n },
            EndoscopicCase::Unitary { n, ext } => GroupType::U { n, ext },
        }
    }

    pub fn h(&self) -> GroupType {
        match *self {
            EndoscopicCase::OddOrthogonal { n } => GroupType::Sp { n },
            EndoscopicCase::SymplecticOdd { n } => GroupType::SoOdd { n },
            EndoscopicCase::SymplecticEven { n } => GroupType::SoEven { n },
            EndoscopicCase::Unitary { n, ext } => GroupType::U { n, ext },
        }
    }

    /// The case a single group spec belongs to, for hypothesis annotations:
    /// `GL_N` over `F` maps to case 1 or 2 by parity, quadratic `GL_N` and
    /// `U(N)` to case 4, `Sp` to case 2, `SO` to case 1 or 3.
    pub fn for_group(g: &GroupType) -> Option<Self> {
        match *g {
            GroupType::Gl { n, ext } if ext.is_quadratic() => Some(EndoscopicCase::Unitary { n, ext }),
            GroupType::Gl { n, .. } if n >= 2 && n % 2 == 1 => Some(EndoscopicCase::OddOrthogonal { n: n / 2 }),
            GroupType::Gl { n, .. } if n >= 2 => Some(EndoscopicCase::SymplecticOdd { n: n / 2 }),
            GroupType::Gl { .. } => None,
            GroupType::Sp { n } => Some(EndoscopicCase::SymplecticOdd { n }),
            GroupType::SoOdd { n } => Some(EndoscopicCase::OddOrthogonal { n }),
            GroupType::SoEven { n } => Some(EndoscopicCase::SymplecticEven { n }),
            GroupType::U { n, ext } => Some(EndoscopicCase::Unitary { n, ext }),
        }
    }
}

impl fmt::Display for EndoscopicCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}: G = {}, G_θ = {}, H = {}", self.number(), self.g(), self.g_theta(), self.h())
    }
}
