//! Named example objects.

use tropgrass_core::plucker::circuits;
use tropgrass_core::quotient::Presentation;
use tropgrass_core::subset::combinations;
use tropgrass_core::{Boolean, LinearForm, Result, Semifield, Subset, Tensor, Tropical};

use crate::format::render_matrix;

/// The golden circuit matrix of the graphic matroid of `K_4`.
pub const MK4_CIRCUITS_GOLDEN: &str = include_str!("../golden/mk4_circuits.txt");

/// The four 3-element flats of `M(K_4)`, which are its non-bases.
pub fn mk4_hyperplanes() -> [Subset; 4] {
    [
        Subset::of(&[1, 2, 3]),
        Subset::of(&[1, 4, 5]),
        Subset::of(&[2, 5, 6]),
        Subset::of(&[3, 4, 6]),
    ]
}

/// The graphic matroid of `K_4` as a Boolean Plücker vector.
pub fn mk4() -> Tensor<Boolean> {
    let hyperplanes = mk4_hyperplanes();
    Tensor::indicator(6, 3, combinations(6, 3).filter(|i| !hyperplanes.contains(i)))
        .expect("valid indices")
}

/// The uniform matroid `U_{d,n}`.
pub fn uniform(d: usize, n: usize) -> Tensor<Boolean> {
    Tensor::uniform(n, d)
}

/// `Σ e_I` over the given index lists.
pub fn boolean(n: usize, d: usize, sets: &[&[usize]]) -> Tensor<Boolean> {
    Tensor::indicator(n, d, sets.iter().map(|s| Subset::of(s))).expect("valid indices")
}

/// `x_1 + x_2 ∼ x_1 + x_3` and `x_2 + x_3 ∼ x_2` on `𝔹^3`.
pub fn two_relation_presentation() -> Presentation<Boolean> {
    let gens = vec![
        (boolean(3, 1, &[&[1], &[2]]), boolean(3, 1, &[&[1], &[3]])),
        (boolean(3, 1, &[&[2], &[3]]), boolean(3, 1, &[&[2]])),
    ];
    Presentation::new(3, 1, gens).expect("well-formed presentation")
}

pub fn tropical(s: &str) -> Tropical {
    s.parse().expect("tropical literal")
}

pub fn tropical_form(entries: &[&str]) -> LinearForm<Tropical> {
    LinearForm::new(entries.iter().map(|s| tropical(s)).collect())
}

/// The circuit forms of `w` as a matrix with rows `e_J`, `|J| = d+1`.
pub fn circuit_matrix_text<S: Semifield>(w: &Tensor<S>) -> Result<String> {
    let rows = circuits(w)?;
    let labels: Vec<String> = rows.keys().map(|j| j.label('e')).collect();
    let columns: Vec<String> = (1..=w.n()).map(|i| format!("e_{i}")).collect();
    let cells: Vec<Vec<S>> = rows.values().map(|f| f.entries().to_vec()).collect();
    Ok(render_matrix(&labels, &columns, &cells))
}
