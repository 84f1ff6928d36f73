use std::fmt;
use std::str::FromStr;

use polar_ga::construction::ConstructionMethod;
use polar_ga::ga::GaScheme;

/// Construction method names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Ega,
    Chung,
    Aga2,
    Aga3,
    Aga4,
    Bec,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Ega,
        Method::Chung,
        Method::Aga2,
        Method::Aga3,
        Method::Aga4,
        Method::Bec,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ega => "ega",
            Method::Chung => "chung",
            Method::Aga2 => "aga2",
            Method::Aga3 => "aga3",
            Method::Aga4 => "aga4",
            Method::Bec => "bec",
        }
    }

    /// The GA scheme, or `None` for the BEC heuristic.
    pub fn scheme(self) -> Option<GaScheme> {
        match self {
            Method::Ega => Some(GaScheme::exact()),
            Method::Chung => Some(GaScheme::chung()),
            Method::Aga2 => Some(GaScheme::aga2()),
            Method::Aga3 => Some(GaScheme::aga3()),
            Method::Aga4 => Some(GaScheme::aga4()),
            Method::Bec => None,
        }
    }

    pub fn construction(self) -> ConstructionMethod {
        match self.scheme() {
            Some(s) => ConstructionMethod::Ga(s),
            None => ConstructionMethod::BecHeuristic,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown method `{s}` (expected ega, chung, aga2, aga3, aga4 or bec)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!("AGA4".parse::<Method>().unwrap(), Method::Aga4);
        assert!("aga5".parse::<Method>().is_err());
        assert!(Method::Bec.scheme().is_none());
    }
}
