//! The dense simplex kernel on its own: a small production plan, its
//! optimality certificate, and a two-priority (lexicographic) objective.

use dea_rts::lp::{self, LpProblem, LpStatus, Objective, Relation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // max 3a + 5b  s.t.  a <= 4, 2b <= 12, 3a + 2b <= 18
    let mut plan = LpProblem::new(Objective::maximize(vec![3.0, 5.0]));
    plan.add_constraint(vec![1.0, 0.0], Relation::Le, 4.0);
    plan.add_constraint(vec![0.0, 2.0], Relation::Le, 12.0);
    plan.add_constraint(vec![3.0, 2.0], Relation::Le, 18.0);

    let sol = lp::solve(&plan)?;
    assert_eq!(sol.status, LpStatus::Optimal);
    let x = sol.x.as_ref().unwrap();
    println!("plan: a = {:.4}, b = {:.4}, profit = {:.4}", x[0], x[1], sol.objective.unwrap());
    println!("iterations: {}, max violation: {:.2e}", sol.iterations, plan.max_violation(x));
    if let Some(cert) = &sol.certificate {
        println!("final basis: {:?}", cert.basis);
    }

    // With profit 3a + 2b every point between (2, 6) and (4, 3) is optimal;
    // a second objective picks the one using the most `a`.
    let primary = Objective::maximize(vec![3.0, 2.0]);
    let secondary = Objective::maximize(vec![1.0, 0.0]);
    let lex = lp::solve_lexicographic(&plan, &primary, &secondary)?;
    let x = lex.x.unwrap();
    println!("lexicographic: a = {:.4}, b = {:.4}", x[0], x[1]);

    // Infeasible and unbounded problems are statuses, not errors.
    let mut empty = LpProblem::new(Objective::minimize(vec![1.0]));
    empty.add_constraint(vec![1.0], Relation::Ge, 2.0);
    empty.add_constraint(vec![1.0], Relation::Le, 1.0);
    println!("contradictory rows: {:?}", lp::solve(&empty)?.status);
    let open = LpProblem::new(Objective::maximize(vec![1.0]));
    println!("no upper limit: {:?}", lp::solve(&open)?.status);
    Ok(())
}
