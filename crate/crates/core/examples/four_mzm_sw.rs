//! Fourth-order Schrieffer-Wolff reduction of the four-Majorana device.

use majorana_readout::effective::{four_mzm_coefficients, four_mzm_loop_coefficients};
use majorana_readout::models::FourMzmParams;
use majorana_readout::sw::{classical_field_b_oracle, exact_p4_coefficient, sw_p4_coefficient};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut p = FourMzmParams::symmetric(10.0, 5.0, 0.3);
    p.lambda_1 = 1.0;
    p.lambda_2 = 1.0;

    let sw = sw_p4_coefficient(&p)?;
    let exact = exact_p4_coefficient(&p)?;
    let all = four_mzm_loop_coefficients(&p)?;
    let two = four_mzm_coefficients(&p)?;
    println!("P4 coefficient");
    println!("  fourth-order SW          {sw:.10e}");
    println!("  exact diagonalization    {exact:.10e}");
    println!("  all tunnelling orderings {:.10e}", all.p4_coefficient());
    println!("  two orderings            {:.10e}", two.p4_coefficient());

    let b = classical_field_b_oracle(&p, None)?;
    println!("Re B");
    println!("  classical-field oracle   {b:.10e}");
    println!("  all tunnelling orderings {:.10e}", all.b.re);
    println!("  two orderings            {:.10e}", two.b.re);

    let mut uniform = p;
    (uniform.lambda_l, uniform.lambda_r) = (1.0, 1.0);
    println!("Re B with equal lambdas  {:.1e}", classical_field_b_oracle(&uniform, None)?);
    Ok(())
}
