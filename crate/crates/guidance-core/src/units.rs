//! Serde adapters for unit conversion at serialization boundaries.

/// Serializes a radian field as degrees, which is what config files and
/// logs use. Apply with `#[serde(with = "crate::units::degrees")]`.
pub mod degrees {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rad: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(rad.to_degrees())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(f64::deserialize(d)?.to_radians())
    }
}

/// Same adapter for `Option<f64>` radian fields.
pub mod degrees_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rad: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match rad {
            Some(r) => s.serialize_some(&r.to_degrees()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.map(f64::to_radians))
    }
}
