#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "galrep/error.hpp"
#include "galrep/pipeline/assets.hpp"
#include "galrep/pipeline/pipeline.hpp"

using namespace galrep;
using namespace galrep::pipeline;

namespace {

const AssetBundle& bundle() {
  static const AssetBundle b = load_assets(GALREP_DATA_DIR);
  return b;
}

StageStatus status(const VerificationReport& r, const std::string& name) {
  const auto* s = r.find(name);
  REQUIRE(s != nullptr);
  return s->status;
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("assets load") {
  const auto& b = bundle();
  CHECK(b.eigen_systems.size() == 6);
  CHECK(b.trace_rows.size() == 3);
  CHECK(b.order_rows.size() == 3);
  CHECK(b.quintics.size() == 3);
  CHECK(b.sextics.size() == 3);
  CHECK(b.torsion_poly.poly.degree() == 24);
  CHECK(b.curve.discriminant() == -163);
  CHECK(b.checksums.size() == 8);
}

TEST_CASE("full pipeline passes with a consistent correspondence") {
  const auto r = run_pipeline(bundle());
  for (const auto& s : r.stages) {
    INFO(s.name << ": " << s.summary);
    CHECK(s.status == StageStatus::Pass);
  }
  CHECK(r.stages.size() == 12);
  CHECK(r.passed());
  // Each derived row carries one label from every table.
  CHECK(r.correspondences.size() == 3);
  int curves = 0;
  for (const auto& [row, entry] : r.correspondences.items()) {
    CHECK(entry.contains("table2"));
    CHECK(entry.contains("table3"));
    CHECK(entry.contains("quintic"));
    CHECK(entry.contains("sextic"));
    curves += entry.contains("curve");
  }
  CHECK(curves == 1);
  CHECK(r.skipped_primes.contains("g1"));
}

TEST_CASE("smaller prime bound still passes") {
  const auto r = run_pipeline(bundle(), {.prime_bound = 20});
  for (const auto& s : r.stages) {
    INFO(s.name << ": " << s.summary);
    CHECK(s.status == StageStatus::Pass);
  }
  CHECK(r.metadata["prime_bound"] == 20);
  CHECK_THROWS_AS(run_pipeline(bundle(), {.prime_bound = 2}), Error);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto a = emit_report(run_pipeline(bundle()), ReportFormat::Json);
  const auto b = emit_report(run_pipeline(bundle()), ReportFormat::Json);
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  CHECK(j["schema"] == "galrep-report/1");
  CHECK(j["summary"]["passed"] == true);
  const auto human = emit_report(run_pipeline(bundle()), ReportFormat::Human);
  CHECK(human.find("Correspondence") != std::string::npos);
  CHECK(human.find("[PASS   ] group-facts") != std::string::npos);
}

TEST_CASE("a corrupted eigenvalue is reported with its prime") {
  auto b = bundle();
  auto& e = b.eigen_systems[0].entries.at(7);
  e.a1 = (e.a1 + 1) % 5;
  const auto r = run_pipeline(b);
  CHECK_FALSE(r.passed());
  const auto* first = [&]() -> const StageResult* {
    for (const auto& s : r.stages)
      if (s.status == StageStatus::Fail) return &s;
    return nullptr;
  }();
  REQUIRE(first != nullptr);
  CHECK((first->name == "pairing" || first->name == "trace-recovery" || first->name == "table2-golden"));
  CHECK(first->witness.dump().find("7") != std::string::npos);
  // Downstream stages that depend on the traces are skipped, independent ones still run.
  CHECK(status(r, "order-prediction") != StageStatus::Pass);
  CHECK(status(r, "group-facts") == StageStatus::Pass);
  CHECK(status(r, "torsion-polynomial") == StageStatus::Pass);
}

TEST_CASE("a corrupted printed trace fails the golden comparison") {
  auto b = bundle();
  auto& v = b.trace_rows[1].b.at(11);
  v = (v + 2) % 5;
  const auto r = run_pipeline(b);
  REQUIRE(r.find("table2-golden")->status == StageStatus::Fail);
  const auto& mism = r.find("table2-golden")->witness["mismatches"];
  REQUIRE(mism.size() == 1);
  CHECK(mism[0]["nearest"] == b.trace_rows[1].name);
  CHECK(mism[0]["differs_at"] == nlohmann::json::array({11}));
  CHECK(status(r, "table3-golden") == StageStatus::Pass);
}

TEST_CASE("a wrong sextic fails the resolvent stage") {
  auto b = bundle();
  std::swap(b.sextics[0], b.sextics[1]);
  const auto r = run_pipeline(b);
  CHECK(status(r, "resolvent") == StageStatus::Fail);
}

TEST_CASE("checksum mismatch is detected") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "galrep_assets_tamper";
  fs::remove_all(dir);
  fs::copy(GALREP_DATA_DIR, dir);
  {
    std::ofstream out(dir / "table2.json", std::ios::app);
    out << " ";
  }
  try {
    load_assets(dir);
    FAIL("expected a checksum error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Schema);
    CHECK(std::string(e.what()).find("table2.json") != std::string::npos);
  }
  fs::remove(dir / "curve.json");
  CHECK_THROWS_AS(load_assets(dir), Error);
  fs::remove_all(dir);
}
