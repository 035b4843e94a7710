#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "coalg/coalgebra.hpp"
#include "coalg/final_examples.hpp"
#include "coalg/finite_algebra.hpp"
#include "coalg/tower.hpp"

using namespace coalg;

TEST_CASE("tower cache round trip and transparency") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "coalg_cache_test";
  fs::remove_all(dir);
  CacheConfig cache{true, dir.string()};

  WordTower cold(Catalog::Se, {identity_assoc()}, 6, cache);
  auto first = cold.carrier(2);
  CHECK(fs::exists(cold.cache_path(2)));
  CHECK(fs::exists(cold.cache_path(2) + ".meta"));

  // a second tower reads the cache; results are identical
  WordTower warm(Catalog::Se, {identity_assoc()}, 6, cache);
  CHECK(warm.carrier(2) == first);

  // and identical to a cache-less run
  WordTower none(Catalog::Se, {identity_assoc()}, 6);
  CHECK(none.carrier(2) == first);

  // the sidecar carries the parameters
  std::ifstream meta(cold.cache_path(2) + ".meta");
  nlohmann::json j = nlohmann::json::parse(meta);
  CHECK(j["schema"] == 1);
  CHECK(j["k"] == 2);
  CHECK(j["L"] == 6);
  CHECK(j["count"] == first.size());

  // different identity sets hash to different files
  WordTower other(Catalog::Se, {}, 6, cache);
  CHECK(other.cache_path(2) != cold.cache_path(2));
  fs::remove_all(dir);
}

TEST_CASE("coalgebra JSON round trip") {
  FiniteCoalgebra xy = example_xy_coalgebra();
  nlohmann::json j = coalgebra_to_json(xy);
  FiniteCoalgebra back = coalgebra_from_json(j);
  back.sig = xy.sig;
  CHECK(back.size == 2);
  CHECK(back.coops.at("beta") == xy.coops.at("beta"));
  CHECK(back.names == xy.names);
}

TEST_CASE("semigroup JSON round trip") {
  FiniteAlgebra a = make_magma(2, {0, 1, 1, 0}, {"e", "g"});
  nlohmann::json j = semigroup_to_json(a);
  FiniteAlgebra back = semigroup_from_json(j);
  CHECK(back.size == 2);
  CHECK(back.ops.at(kBinaryOp) == a.ops.at(kBinaryOp));
  // names resolve too
  nlohmann::json named = {{"elements", {"e", "g"}}, {"table", {"e", "g", "g", "e"}}};
  CHECK(semigroup_from_json(named).ops.at(kBinaryOp) == a.ops.at(kBinaryOp));
}

TEST_CASE("resfunction JSON round trip") {
  ResFunction f{2, 2, {0, 1, 2, 3}};
  nlohmann::json j = resfunction_to_json(f);
  CHECK(j["table"]["01"] == "01");
  CHECK(resfunction_from_json(j) == f);
}
