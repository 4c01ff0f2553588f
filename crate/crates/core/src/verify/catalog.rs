use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Bumped whenever a property's quantification or meaning changes.
pub const CATALOG_VERSION: u32 = 1;

macro_rules! catalog {
    ($ty:ident { $($variant:ident => $code:literal, $name:literal;)* }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $ty {
            $($variant,)*
        }

        impl $ty {
            pub const ALL: &'static [$ty] = &[$($ty::$variant,)*];

            pub fn code(self) -> &'static str {
                match self {
                    $($ty::$variant => $code,)*
                }
            }

            pub fn name(self) -> &'static str {
                match self {
                    $($ty::$variant => $name,)*
                }
            }

            fn lookup(s: &str) -> Option<Self> {
                Self::ALL.iter().copied().find(|p| p.code().eq_ignore_ascii_case(s) || p.name() == s)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.code())
            }
        }
    };
}

catalog!(PropertyId {
    FiniteConnected => "P1", "finiteconnected";
    AdhSandwich => "P2", "adh-sandwich";
    ClosureConnected => "P3", "closure-connected";
    UnionConnected => "P4", "union-connected";
    IteratedAdhConnected => "P5", "iterated-adh-connected";
    Defect1Connect => "P6", "defect1-connect";
    RReflector => "P7", "r-reflector";
    RConnect => "P8", "r-connect";
    RAdhBase => "P9", "r-adh-base";
    StarDuality => "P10", "star-duality";
    EnclosureTheorem => "P11", "enclosure-theorem";
    EnclosesIff => "P12", "encloses-iff";
    OpenClosedT => "P13", "open-closed-T";
    NotTSub => "P14", "notTsub";
    AllTIffDefect1 => "P15", "allT-iff-defect1";
    TPathCharacterization => "P16", "T-path-characterization";
    TSubConnect => "P17", "Tsub-connect";
    SandwichDiagram => "P18", "sandwich-diagram";
    SandwichedBetweenRAdherences => "P19", "sandwiched-between-r-adherences";
    ProductConnected => "P20", "product-connected";
});

catalog!(ClaimId {
    IteratedRAdherence => "C1", "iterated-r-adherence";
    SandwichPropertyUniversal => "C2", "sandwich-property-universal";
});

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::lookup(s).ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::lookup(s).ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_code_and_name() {
        assert_eq!(PropertyId::ALL.len(), 20);
        assert_eq!("P11".parse::<PropertyId>().unwrap(), PropertyId::EnclosureTheorem);
        assert_eq!("p3".parse::<PropertyId>().unwrap(), PropertyId::ClosureConnected);
        assert_eq!("notTsub".parse::<PropertyId>().unwrap(), PropertyId::NotTSub);
        assert!(matches!("P21".parse::<PropertyId>(), Err(Error::UnknownProperty(_))));
        assert_eq!("C1".parse::<ClaimId>().unwrap(), ClaimId::IteratedRAdherence);
        assert!(matches!("C3".parse::<ClaimId>(), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn codes_are_sequential() {
        for (i, p) in PropertyId::ALL.iter().enumerate() {
            assert_eq!(p.code(), format!("P{}", i + 1));
        }
    }
}
