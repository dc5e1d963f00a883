#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fctp/formulations.hpp"
#include "fctp/generators.hpp"
#include "fctp/lp_format.hpp"
#include "fctp/oracle.hpp"
#include "fctp/tree.hpp"
#include "fctp/tree_dp.hpp"
#include "helpers.hpp"

using namespace fctp;

namespace {

Instance single_arc(Cap b1, Cap b2, Rational p, Rational q, Variant v = {}) {
    return new_instance({b1, b2}, {{1, 2}}, {std::move(p)}, {std::move(q)}, std::move(v));
}

const ModelRow& row_named(const Model& m, const std::string& name) {
    for (const ModelRow& row : m.constraints)
        if (row.name == name) return row;
    FAIL("missing row " + name);
    throw std::runtime_error("unreachable");
}

}  // namespace

TEST_CASE("instance_fingerprint is stable and semantic") {
    Instance a = single_arc(2, 3, Rational(-1), Rational(1));
    Instance b = single_arc(2, 3, Rational(-1), Rational(1));
    b.provenance = "{\"note\":\"copy\"}";
    Instance c = single_arc(2, 3, Rational(-2), Rational(1));
    REQUIRE(instance_fingerprint(a).size() == 16);
    REQUIRE(instance_fingerprint(a) == instance_fingerprint(b));  // provenance not semantic
    REQUIRE(instance_fingerprint(a) != instance_fingerprint(c));
}

TEST_CASE("check_point evaluates bounds, rows, and claimed integrality") {
    Model m;
    int xv = m.add_var("x", Rational(0), Rational(2), VarKind::Continuous);
    m.add_var("y", Rational(0), Rational(1), VarKind::Binary);
    ModelRow& row = m.add_row("r", RowSense::LE, Rational(1));
    add_term(row, xv, Rational(1, 2));

    Assignment pt;
    pt.set("x", Rational(3));
    auto viols = check_point(m, pt);
    REQUIRE(viols.size() == 2);  // ub:x and the row
    REQUIRE(viols[0].name == "ub:x");
    REQUIRE(viols[1].name == "r");

    Assignment frac;
    frac.set("y", Rational(1, 2));
    REQUIRE(check_point(m, frac).empty());
    frac.claims_integrality = true;
    viols = check_point(m, frac);
    REQUIRE(viols.size() == 1);
    REQUIRE(viols[0].name == "int:y");

    Assignment ghost;
    ghost.set("w", Rational(1));
    REQUIRE(testutil::raised([&] { check_point(m, ghost); }) == Errc::unknown_variable);

    REQUIRE(testutil::raised([&] {
                Model dup;
                dup.add_var("x", Rational(0), std::nullopt, VarKind::Continuous);
                dup.add_var("x", Rational(0), std::nullopt, VarKind::Continuous);
            }) == Errc::validation_error);
}

TEST_CASE("build_ip shapes the mixed-binary model") {
    Instance inst = single_arc(2, 3, Rational(-1), Rational(4));
    Model m = build_ip(inst);
    REQUIRE(m.formulation == "ip");
    REQUIRE(m.fingerprint == instance_fingerprint(inst));
    REQUIRE(m.variables.size() == 2);
    REQUIRE(m.constraints.size() == 3);  // cap_1, cap_2, ub_1_2
    REQUIRE(m.variables[0].name == "x_1_2");
    REQUIRE(*m.variables[0].upper == 2);
    REQUIRE(m.variables[0].kind == VarKind::Continuous);
    REQUIRE(m.variables[1].kind == VarKind::Binary);
    REQUIRE(row_named(m, "cap_2").rhs == 3);
    REQUIRE(row_named(m, "ub_1_2").terms.size() == 2);
    REQUIRE(m.objective.size() == 2);

    Variant v;
    v.link_lower = true;
    Model lb = build_ip(single_arc(2, 3, Rational(-1), Rational(4), v));
    REQUIRE(lb.constraints.size() == 4);
    REQUIRE(row_named(lb, "lb_1_2").sense == RowSense::LE);
}

TEST_CASE("build_ip respects the generated variant senses and counts") {
    GenConfig cfg;
    cfg.n = 20;
    cfg.B = 20;
    cfg.r = 1;
    cfg.seed = 17;
    Instance inst = gen_bipartite(cfg);
    Model m = build_ip(inst);
    REQUIRE(m.variables.size() == 800);
    REQUIRE(m.constraints.size() == 440);  // 40 node rows + 400 linking rows
    REQUIRE(row_named(m, "cap_1").sense == RowSense::LE);
    REQUIRE(row_named(m, "cap_21").sense == RowSense::EQ);  // customers are equalities
    REQUIRE(row_named(m, "cap_40").sense == RowSense::EQ);
}

TEST_CASE("build_ip_z appends the unary expansion") {
    Instance inst = single_arc(2, 2, Rational(-1), Rational(1));
    Model m = build_ip_z(inst);
    REQUIRE(m.formulation == "ipz");
    REQUIRE(m.metadata[0].second == "ipz");
    REQUIRE(m.variables.size() == 5);  // x, y, z_1_2_{0,1,2}
    REQUIRE(m.constraints.size() == 6);
    REQUIRE(m.constraints[3].name == "zsum_1_2");
    REQUIRE(m.constraints[4].name == "xz_1_2");
    REQUIRE(m.constraints[5].name == "yz_1_2");
    REQUIRE(m.variables[2].name == "z_1_2_0");
    REQUIRE(m.variables[2].kind == VarKind::Binary);
    REQUIRE(row_named(m, "zsum_1_2").terms.size() == 3);
    REQUIRE(row_named(m, "xz_1_2").terms.size() == 3);  // z_1, z_2, -x
    REQUIRE(row_named(m, "yz_1_2").sense == RowSense::LE);
}

TEST_CASE("build_ip_z degenerates cleanly on a zero-capacity arc") {
    Instance inst = single_arc(0, 5, Rational(-1), Rational(1));
    Model m = build_ip_z(inst);
    REQUIRE(m.variables.size() == 3);  // x, y, z_1_2_0
    Assignment closed;
    closed.claims_integrality = true;
    closed.set("z_1_2_0", 1);
    REQUIRE(check_point(m, closed).empty());
    Assignment flowing;
    flowing.set("x_1_2", 1);
    flowing.set("z_1_2_0", 1);
    REQUIRE_FALSE(check_point(m, flowing).empty());
}

TEST_CASE("build_qdp on a single arc matches the hand expansion") {
    Instance inst = single_arc(2, 2, Rational(-1), Rational(1), Variant{});
    RootedTree rt = root_tree(inst);
    Model m = build_qdp(rt);
    REQUIRE(m.formulation == "qdp");
    REQUIRE(m.variables.size() == 9);   // v_0_1_0_k, u_1_2_0_k, v_1_2_l_0
    REQUIRE(m.constraints.size() == 7);  // 3 flow + 3 rev + unit
    REQUIRE(m.var_index("v_0_1_0_2") >= 0);
    REQUIRE(m.var_index("u_1_2_0_1") >= 0);
    REQUIRE(m.var_index("v_1_2_2_0") >= 0);

    // rev reduces to v_{1,2,l,0} = u_{1,2,0,l}
    const ModelRow& rev = row_named(m, "rev_1_2_2");
    REQUIRE(rev.terms.size() == 2);
    REQUIRE(rev.sense == RowSense::EQ);
    const ModelRow& unit = row_named(m, "unit");
    REQUIRE(unit.terms.size() == 3);
    REQUIRE(unit.rhs == 1);

    // objective keeps c_ij0 = 0 out: only l = 1, 2 appear
    REQUIRE(m.objective.size() == 1);  // c(1) = 0 for p=-1,q=1; c(2) = -1
    bool metadata_has_projection = false;
    for (const auto& [key, value] : m.metadata)
        metadata_has_projection = metadata_has_projection || key == "projection_x";
    REQUIRE(metadata_has_projection);
}

TEST_CASE("build_qdp counts v variables by the leaf-aware formula") {
    Instance inst = new_instance({2, 3, 1, 2}, {{1, 2}, {2, 3}, {2, 4}},
                                 {Rational(-2), Rational(1), Rational(-1)},
                                 {Rational(1), Rational(0), Rational(2)}, Variant{});
    RootedTree rt = root_tree(inst);
    Model m = build_qdp(rt);
    std::size_t v_real = 0;
    for (const ModelVar& var : m.variables)
        if (var.name[0] == 'v' && var.name.rfind("v_0_", 0) != 0) ++v_real;
    std::size_t expect = 0;
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        int child = rt.child_of_arc(static_cast<int>(e));
        for (Cap l = 0; l <= inst.arcs[e].a; ++l)
            expect += rt.is_leaf(child) ? 1 : static_cast<std::size_t>(rt.cap(child) - l + 1);
    }
    REQUIRE(v_real == expect);
}

TEST_CASE("build_qdp and build_qsn reject non-default variants") {
    Variant v;
    v.node_sense = {Sense::LE, Sense::EQ};
    Instance eq = single_arc(2, 2, Rational(0), Rational(0), v);
    RootedTree rt = root_tree(eq);
    REQUIRE(testutil::raised([&] { build_qdp(rt); }) == Errc::unsupported_variant);
    REQUIRE(testutil::raised([&] { build_qsn(rt, false); }) == Errc::unsupported_variant);
}

TEST_CASE("empty flow certifies objective zero in the dual") {
    Instance inst = single_arc(2, 2, Rational(-1), Rational(1), Variant{});
    RootedTree rt = root_tree(inst);
    Model qdp = build_qdp(rt);
    DpCertificate cert = encode_uv(rt, {0});
    Assignment pt = certificate_assignment(rt, cert);
    REQUIRE(check_point(qdp, pt).empty());
    REQUIRE(objective_value(qdp, pt) == 0);
}

TEST_CASE("build_qsn lays out the scan blocks") {
    Instance inst = single_arc(2, 2, Rational(-1), Rational(1), Variant{});
    RootedTree rt = root_tree(inst);

    Model qsn = build_qsn(rt, false);
    REQUIRE(qsn.formulation == "qsn");
    REQUIRE(qsn.variables.size() == 9);  // f_1_2_0_k, f_1_0_k_k, f_2_1_0_k
    REQUIRE(qsn.constraints.size() == 8);
    REQUIRE(qsn.var_index("f_1_2_0_2") >= 0);
    REQUIRE(qsn.var_index("f_1_0_2_2") >= 0);
    REQUIRE(qsn.var_index("f_2_1_0_2") >= 0);
    const ModelRow& link = row_named(qsn, "link_1_2_2");
    REQUIRE(link.terms.size() == 2);  // f_1_2_0_2 vs f_2_1_0_2

    Model qsnz = build_qsn(rt, true);
    REQUIRE(qsnz.formulation == "qsnz");
    REQUIRE(qsnz.variables.size() == 12);  // + z_1_2_{0,1,2}
    REQUIRE(qsnz.constraints.size() == 11);
    int zi = qsnz.var_index("z_1_2_1");
    REQUIRE(zi >= 0);
    REQUIRE(qsnz.variables[static_cast<std::size_t>(zi)].kind == VarKind::Continuous);
    REQUIRE(*qsnz.variables[static_cast<std::size_t>(zi)].upper == 1);
    REQUIRE(row_named(qsnz, "link1_1_2_0").terms.size() == 2);
    REQUIRE(row_named(qsnz, "link2_1_2_0").terms.size() == 2);
}

TEST_CASE("builders are deterministic") {
    Instance inst = new_instance({2, 3, 1}, {{1, 2}, {2, 3}}, {Rational(-2), Rational(1)},
                                 {Rational(1), Rational(0)}, Variant{});
    REQUIRE(write_model_lp(build_ip_z(inst)) == write_model_lp(build_ip_z(inst)));
    RootedTree rt = root_tree(inst);
    REQUIRE(write_model_lp(build_qdp(rt)) == write_model_lp(build_qdp(rt)));
    REQUIRE(write_model_lp(build_qsn(rt, true)) == write_model_lp(build_qsn(rt, true)));
}

TEST_CASE("oracle optima satisfy both integer formulations") {
    Instance inst = new_instance({2, 2, 3}, {{1, 2}, {2, 3}, {1, 3}},
                                 {Rational(-1), Rational(-2), Rational(1)},
                                 {Rational(1), Rational(2), Rational(0)});
    Solution sol = brute_force_solve(inst);
    Model ip = build_ip(inst);
    Model ipz = build_ip_z(inst);
    Assignment on_ip = solution_assignment(inst, sol, false);
    Assignment on_ipz = solution_assignment(inst, sol, true);
    REQUIRE(check_point(ip, on_ip).empty());
    REQUIRE(check_point(ipz, on_ipz).empty());
    REQUIRE(objective_value(ip, on_ip) == sol.objective);
    REQUIRE(objective_value(ipz, on_ipz) == sol.objective);
}
