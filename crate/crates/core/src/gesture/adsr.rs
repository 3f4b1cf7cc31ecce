use super::{Digraph, Gesture, GestureError, SampledPath};

/// Attack/decay/sustain/release envelope, durations in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdsrParams {
    pub attack_level: f64,
    pub sustain_level: f64,
    pub attack: f64,
    pub decay: f64,
    pub sustain: f64,
    pub release: f64,
}

impl Default for AdsrParams {
    fn default() -> Self {
        AdsrParams { attack_level: 1.0, sustain_level: 0.6, attack: 0.01, decay: 0.05, sustain: 0.5, release: 0.2 }
    }
}

impl AdsrParams {
    pub fn validate(&self) -> Result<(), GestureError> {
        for (name, v) in [("attack level", self.attack_level), ("sustain level", self.sustain_level)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(GestureError::InvalidEnvelope(format!("{name} {v} outside [0, 1]")));
            }
        }
        for (name, v) in [("attack", self.attack), ("decay", self.decay), ("sustain", self.sustain), ("release", self.release)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(GestureError::InvalidEnvelope(format!("{name} duration {v} must be positive")));
            }
        }
        Ok(())
    }

    /// `[t0, t1, t2, t3, t4]`: start, peak, sustain start, release start, end.
    pub fn vertex_times(&self) -> [f64; 5] {
        let t1 = self.attack;
        let t2 = t1 + self.decay;
        let t3 = t2 + self.sustain;
        [0.0, t1, t2, t3, t3 + self.release]
    }

    pub fn vertex_levels(&self) -> [f64; 5] {
        [0.0, self.attack_level, self.sustain_level, self.sustain_level, 0.0]
    }
}

/// The envelope as a gesture on the five-vertex line digraph in the
/// (time, amplitude) plane, with straight-line arrows.
pub fn adsr_gesture(params: &AdsrParams, samples_per_segment: usize) -> Result<Gesture, GestureError> {
    params.validate()?;
    let times = params.vertex_times();
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(GestureError::InvalidEnvelope("vertex times are not increasing".into()));
    }
    let points: Vec<Vec<f64>> = times
        .iter()
        .zip(params.vertex_levels())
        .map(|(&t, a)| vec![t, a])
        .collect();
    let paths = points
        .windows(2)
        .map(|w| SampledPath::linear(&w[0], &w[1], samples_per_segment))
        .collect::<Result<Vec<_>, _>>()?;
    Gesture::new(Digraph::line(5)?, points, paths)
}
