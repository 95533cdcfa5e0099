//! Browser bindings for the moduli pictures and centre tables.

use orbifusion::fuscat::Sign;
use orbifusion::interpolate::{interpolated_ty, su2_interpolation, svg_moduli};
use orbifusion::quadform::{lie_centre_quadform, LieCentre};
use orbifusion::Error;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest level accepted by the page's level inputs.
pub const MAX_LEVEL: i32 = 200;

fn js(e: Error) -> JsError {
    JsError::new(&format!("{}: {}", e.code(), e))
}

fn check_level(k: i32) -> Result<(), JsError> {
    if (1..=MAX_LEVEL).contains(&k) {
        Ok(())
    } else {
        Err(JsError::new(&format!("level must lie in 1..={MAX_LEVEL}")))
    }
}

/// Moduli of simples of the interpolated Tambara-Yamagami category, as SVG.
#[wasm_bindgen(js_name = tyModuli)]
pub fn ty_moduli(p: i32, k: i32, tau_plus: bool) -> Result<String, JsError> {
    check_level(k)?;
    let tau = if tau_plus { Sign::Plus } else { Sign::Minus };
    match interpolated_ty(p.into(), k.into(), tau).map_err(js)? {
        Ok(t) => svg_moduli(&t.report).map_err(js),
        Err(rej) => Err(JsError::new(&format!("{}: {}", rej.code(), rej.reason()))),
    }
}

/// Moduli of simples for `SU(2)` at level `k`, as SVG.
#[wasm_bindgen(js_name = su2Moduli)]
pub fn su2_moduli(k: i32) -> Result<String, JsError> {
    check_level(k)?;
    let report = su2_interpolation(k as usize).map_err(js)?;
    svg_moduli(&report).map_err(js)
}

/// `[{level, order, q, label}]` for the invertible part of the centre over
/// levels `0..=kmax`, as JSON.
#[wasm_bindgen(js_name = su2CentreTable)]
pub fn su2_centre_table(kmax: i32) -> Result<String, JsError> {
    if !(0..=MAX_LEVEL).contains(&kmax) {
        return Err(JsError::new(&format!("kmax must lie in 0..={MAX_LEVEL}")));
    }
    let rows = (0..=kmax)
        .map(|k| {
            let b = lie_centre_quadform(LieCentre::SUn { n: 2, k: k.into() }).map_err(js)?;
            let q = b.form.values().get(1).map(|p| p.to_string());
            Ok(json!({"level": k, "order": b.group().order(), "q": q, "label": b.label}))
        })
        .collect::<Result<Vec<_>, JsError>>()?;
    Ok(serde_json::Value::Array(rows).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_cycles() {
        let t: serde_json::Value = serde_json::from_str(&su2_centre_table(4).ok().unwrap()).unwrap();
        let labels: Vec<&str> = t.as_array().unwrap().iter().map(|r| r["label"].as_str().unwrap()).collect();
        assert_eq!(labels, ["Vec", "Semi", "sVec", "anti-Semi", "Vec"]);
    }

    #[test]
    fn svgs_render() {
        assert!(ty_moduli(3, 3, true).ok().unwrap().starts_with("<svg"));
        assert!(su2_moduli(4).ok().unwrap().contains("ℝP³"));
    }
}
