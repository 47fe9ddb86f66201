// Exact linear algebra over F_p: reduced row echelon form, kernels, images,
// linear systems and the pullback of two linear maps.

use tilted_giraud::linalg::{pullback_linear, Field, Mat};

fn main() -> tilted_giraud::Result<()> {
    let f5 = Field::new(5)?;
    let m = Mat::from_rows(f5, &[vec![1, 2, 3], vec![2, 4, 1], vec![3, 1, 4]])?;
    let (r, pivots) = m.rref();
    println!("rref over F_5 with pivots {pivots:?}:\n{r:?}");

    let kernel = m.kernel_basis();
    let image = m.image_basis();
    println!("rank {} = dim image {}; kernel has dim {}", m.rank(), image.dim(), kernel.dim());
    assert_eq!(image.dim() + kernel.dim(), m.cols());

    // solve m·x = b for a right-hand side taken from the image
    let b = Mat::column(f5, &m.col_vec(0));
    let x = m.solve(&b)?.expect("b lies in the image");
    assert_eq!(m.mul(&x), b);
    println!("a solution of m·x = first column: {:?}", x.col_vec(0));

    // F₂: the pullback of two projections R² → R is the diagonal-like
    // subspace {(u, v) : u₁ = v₁}
    let f2 = Field::f2();
    let p = Mat::from_rows(f2, &[vec![1, 0]])?;
    let pb = pullback_linear(&p, &p)?;
    println!("pullback of two coordinate projections has dim {}", pb.dim());
    assert_eq!(pb.dim(), 3);
    Ok(())
}
