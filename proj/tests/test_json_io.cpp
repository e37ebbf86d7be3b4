#include "qmono/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace qmono;

TEST_SUITE("json_io") {

TEST_CASE("torus element roundtrip") {
    std::mt19937_64 rng(1);
    const TorusElement x = random_torus(rng, 0.618, 5, 3);
    const io::json j = io::to_json(x);
    const TorusElement y = io::torus_from_json(io::json::parse(j.dump()));
    CHECK(y.theta == x.theta);
    CHECK(distance(x, y) == 0.0);
}

TEST_CASE("heisenberg element roundtrip") {
    GridSpec g;
    g.N = 64;
    g.L = 6;
    const ContextPtr ctx = make_context(classify(Rat(1, 2), Rat(1, 2), 5), g);
    std::mt19937_64 rng(2);
    const HeisenbergElement f = make_packet(ctx, 2, random_packet(rng, 3));
    const HeisenbergElement h = io::heisenberg_from_json(io::json::parse(io::to_json(f).dump()), ctx);
    CHECK(h.m == 2);
    CHECK(distance(f, h) == 0.0);

    const GridSpec back = io::grid_from_json(io::to_json(g));
    CHECK(back == g);
}

TEST_CASE("instance roundtrip") {
    const hopf::ModuleAlgebra A = hopf::clock_instance(3);
    const auto path = std::filesystem::temp_directory_path() / "qmono_clock_3.json";
    io::save_instance(A, path);
    const hopf::ModuleAlgebra B = io::load_instance(path);
    std::filesystem::remove(path);
    CHECK(B.name == A.name);
    CHECK(B.H.dim == A.H.dim);
    CHECK(B.M.dim == A.M.dim);
    CHECK(B.Omega2.has_value());
    CHECK((B.H.antipode - A.H.antipode).cwiseAbs().maxCoeff() == 0.0);
    CHECK((*B.dB - *A.dB).cwiseAbs().maxCoeff() == 0.0);
    CHECK(hopf::hopf_gate(B.H).worst() <= 1e-12);
    const auto sa = hopf::solve_hochschild_space(A), sb = hopf::solve_hochschild_space(B);
    CHECK(sa.dim_Z == sb.dim_Z);
    CHECK(sa.dim_B == sb.dim_B);
}

TEST_CASE("check report serialization") {
    hopf::CheckReport r;
    r.add("cocycle", 1e-3);
    r.add("unit", 0.0);
    const io::json j = io::to_json(r);
    CHECK(j.dump().find("cocycle") != std::string::npos);
    CHECK(r.worst() == 1e-3);
    CHECK_FALSE(r.passed(1e-4));
}

}  // TEST_SUITE
