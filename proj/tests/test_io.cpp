#include <doctest.h>

#include "mcensus/exponent.hpp"
#include "mcensus/matrix_io.hpp"

using namespace mcensus;

TEST_CASE("matrix JSON round trip, including past-int64 entries") {
  const json j = json::parse("[[1,-2],[3,4]]");
  const Mat a = mat_from_json(j);
  CHECK(a.at(0, 1) == -2);
  CHECK(mat_to_json(a) == j);

  // huge entries travel as decimal strings
  Mat big(1);
  big.at(0, 0) = parse_int128("170141183460469231731687303715884105727");
  const json bj = mat_to_json(big);
  CHECK(bj[0][0].is_string());
  CHECK(mat_from_json(bj) == big);

  CHECK_THROWS_AS(mat_from_json(json::parse("[[1,2],[3]]")), DomainError);
  CHECK_THROWS_AS(mat_from_json(json::parse("[]")), DomainError);
  CHECK_THROWS_AS(mat_from_json(json::parse("[[1.5]]")), DomainError);
}

TEST_CASE("rational and F_p matrices from JSON") {
  const FieldMat<Rat> r = rat_mat_from_json(json::parse(R"([["1/2",0],[0,"-3/4"]])"));
  CHECK(r.at(0, 0) == Rat(mpz_class(1), mpz_class(2)));
  CHECK(r.at(1, 1) == Rat(mpz_class(-3), mpz_class(4)));
  const json out = field_mat_to_json(r);
  CHECK(out[0][0] == json("1/2"));
  CHECK(out[0][1] == json(0));

  const PrimeField f5(5);
  const FieldMat<Fp> m = fp_mat_from_json(json::parse("[[7,-1],[0,4]]"), f5);
  CHECK(m.at(0, 0).v == 2);  // 7 mod 5
  CHECK(m.at(0, 1).v == 4);  // -1 mod 5
  CHECK(field_mat_to_json(m)[0][0] == json(2));
}

TEST_CASE("trace JSON carries exactly the five documented keys") {
  const FieldMat<Rat> a = rat_mat_from_json(json::parse("[[1,1],[1,1]]"));
  const auto lif = left_identity_factor(a);
  const json t = trace_to_json(lif.trace);
  REQUIRE(t.size() == 5);
  CHECK(t.contains("null_basis"));
  CHECK(t.contains("rref_rows"));
  CHECK(t.contains("pivots"));
  CHECK(t.contains("b_prime"));
  CHECK(t.contains("b"));
  CHECK(t["pivots"] == json::array({1}));
  CHECK(t["b"] == json::parse("[[0,1],[0,1]]"));
  CHECK(t["b_prime"] == json::parse("[[-1,1],[0,0]]"));
}

TEST_CASE("census result JSON fields and order") {
  const CountMap map = census_products(BoxSpec{2, 1}, 2);
  const json j = census_result_to_json(summarize(map, 7));
  const std::vector<std::string> want{"n",        "H",           "m",
                                      "variant",  "distinct",    "total_tuples",
                                      "max_multiplicity", "argmax_key_hex", "wall_ms"};
  REQUIRE(j.size() == want.size());
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) CHECK(it.key() == want[i]);
  CHECK(j["distinct"] == 313);
  CHECK(j["variant"] == "all");
  CHECK(j["wall_ms"] == 7);
}

TEST_CASE("log corrections per quantity") {
  CHECK(log_correction(Quantity::DetZero) == LogCorrection::Log);
  CHECK(log_correction(Quantity::Box) == LogCorrection::None);
  CHECK(log_correction(Quantity::RankK) == LogCorrection::None);
  CHECK(log_correction(Quantity::WLower) == LogCorrection::None);
}
