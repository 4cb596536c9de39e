//! JSON round trips for [`ModularData`] and [`WMatrix`], with shape validation on input.

use serde::Serialize;

use super::{Matrix, ModularData, WMatrix};
use crate::cocycle::CocycleParams;
use crate::error::{Error, Result};
use crate::group::GroupSpec;

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn check_square(name: &str, m: &Matrix, n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput(format!("{name} is not {n}×{n}")));
    }
    Ok(())
}

pub fn modular_data_from_json(text: &str) -> Result<ModularData> {
    let md: ModularData = serde_json::from_str(text)?;
    let spec = md.params.spec;
    let spec = GroupSpec::new(spec.q(), spec.p(), spec.n())?;
    CocycleParams::new(spec, md.params.u())?;
    let n = md.labels.len();
    if md.dims.len() != n || md.twists.len() != n {
        return Err(Error::InvalidInput(format!("{n} labels but {} dims and {} twists", md.dims.len(), md.twists.len())));
    }
    check_square("S", &md.s, n)?;
    if md.s.iter().flatten().any(|v| md.order % v.order() != 0) {
        return Err(Error::InvalidInput(format!("S has entries outside Q(zeta_{})", md.order)));
    }
    Ok(md)
}

pub fn wmatrix_from_json(text: &str, rank: usize) -> Result<WMatrix> {
    let w: WMatrix = serde_json::from_str(text)?;
    check_square("W", &w.w, rank)?;
    check_square("W~", &w.w_tilde, rank)?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::DoubleModel;

    #[test]
    fn modular_data_round_trip() {
        let m = DoubleModel::new(CocycleParams::new(GroupSpec::default(), 3).unwrap());
        let md = ModularData::compute(&m);
        let back = modular_data_from_json(&to_json(&md).unwrap()).unwrap();
        assert_eq!(back.s, md.s);
        assert_eq!(back.twists, md.twists);
        assert_eq!(back.labels, md.labels);
        assert_eq!(back.c_mod_8, Some(0));
        assert!(modular_data_from_json("{\"labels\": []}").is_err());
    }
}
