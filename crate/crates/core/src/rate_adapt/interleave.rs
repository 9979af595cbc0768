use crate::{Error, Result};

fn check(len: usize, q_m: usize) -> Result<()> {
    if q_m == 0 || !len.is_multiple_of(q_m) {
        return Err(Error::NotMultipleOfModulationOrder { len, q_m });
    }
    Ok(())
}

/// Row-in, column-out bit interleaver: output group `g` (of `q_m` bits)
/// holds inputs `g + l * E/q_m` for `l = 0..q_m`.
pub fn interleave<T: Copy>(input: &[T], q_m: usize) -> Result<Vec<T>> {
    check(input.len(), q_m)?;
    let rows = input.len() / q_m;
    let mut out = Vec::with_capacity(input.len());
    for g in 0..rows {
        out.extend((0..q_m).map(|l| input[g + l * rows]));
    }
    Ok(out)
}

/// Inverse of [`interleave`].
pub fn deinterleave<T: Copy + Default>(input: &[T], q_m: usize) -> Result<Vec<T>> {
    check(input.len(), q_m)?;
    let rows = input.len() / q_m;
    let mut out = vec![T::default(); input.len()];
    for (i, &v) in input.iter().enumerate() {
        out[(i % q_m) * rows + i / q_m] = v;
    }
    Ok(out)
}
