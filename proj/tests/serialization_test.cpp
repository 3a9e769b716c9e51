#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "gowers/error.hpp"
#include "gowers/serialization.hpp"
#include "gowers/spectral.hpp"
#include "oracles.hpp"

using namespace gowers;

namespace {

GroupFunction fn(const GroupSpec& g, std::vector<double> v) { return GroupFunction(g, std::move(v)); }

std::vector<double> awkward_values(std::size_t n) {
  std::mt19937_64 rng(121);
  auto v = oracle::random_vec(rng, n, -1e3, 1e3);
  v[0] = 0.1;
  if (n > 1) v[1] = -std::numeric_limits<double>::denorm_min();
  if (n > 2) v[2] = 1.0 / 3.0;
  if (n > 3) v[3] = std::numeric_limits<double>::max();
  return v;
}

TEST(Group, ParseAndJson) {
  EXPECT_EQ(parse_group("8").orders(), (std::vector<std::size_t>{8}));
  EXPECT_EQ(parse_group("2,2,3").orders(), (std::vector<std::size_t>{2, 2, 3}));
  EXPECT_THROW(parse_group(""), InvalidParameter);
  EXPECT_THROW(parse_group("2,x"), InvalidParameter);
  EXPECT_THROW(parse_group("2,0"), InvalidParameter);
  const GroupSpec g({3, 5});
  EXPECT_EQ(group_from_json(to_json(g)), g);
}

TEST(GroupFunctionJson, BitExactRoundTrip) {
  const GroupSpec g({2, 3});
  const GroupFunction f = fn(g, awkward_values(6));
  const std::string text = to_json(f).dump();
  const GroupFunction back = group_function_from_json(Json::parse(text));
  EXPECT_EQ(back.group(), g);
  EXPECT_EQ(back.vector(), f.vector());
}

TEST(GroupFunctionJson, Malformed) {
  EXPECT_THROW(group_function_from_json(Json::parse(R"({"orders":[4],"values":[1,2]})")), InvalidParameter);
  EXPECT_THROW(group_function_from_json(Json::parse(R"({"values":[1,2]})")), InvalidParameter);
  EXPECT_THROW(group_function_from_json(Json::parse(R"({"orders":[2],"values":[1,"a"]})")), InvalidParameter);
}

TEST(Csv, BitExactRoundTrip) {
  const GroupSpec g = GroupSpec::cyclic(9);
  const GroupFunction f = fn(g, awkward_values(9));
  std::stringstream ss;
  write_csv(ss, f);
  EXPECT_EQ(ss.str().substr(0, 12), "index,value\n");
  const GroupFunction back = read_csv(ss, g);
  EXPECT_EQ(back.vector(), f.vector());
}

TEST(Csv, Malformed) {
  std::stringstream missing("index,value\n0,1\n");
  EXPECT_THROW(read_csv(missing, GroupSpec::cyclic(2)), InvalidParameter);
  std::stringstream bad("index,value\n0,1\n5,2\n");
  EXPECT_THROW(read_csv(bad, GroupSpec::cyclic(2)), InvalidParameter);
}

TEST(CubeFunctionJson, RoundTrip) {
  const GroupSpec g = GroupSpec::cyclic(3);
  const CubeFunction F(g, 2, awkward_values(27));
  const CubeFunction back = cube_function_from_json(Json::parse(to_json(F).dump()));
  EXPECT_EQ(back.dimension(), 2);
  EXPECT_EQ(back.vector(), F.vector());
}

TEST(SpectrumJson, Layout) {
  const Json j = to_json(dft(fn(GroupSpec::cyclic(4), {1, 0, 0, 0})));
  EXPECT_EQ(j.at("orders"), Json::array({4}));
  EXPECT_EQ(j.at("re").size(), 4u);
  EXPECT_DOUBLE_EQ(j.at("re")[2].get<double>(), 0.25);
  EXPECT_EQ(j.at("im")[0].get<double>(), 0.0);
}

TEST(PartitionJson, RoundTrip) {
  const GroupSpec g = GroupSpec::cyclic(5);
  const Partition P = Partition::from_labels(g, {0, 1, 0, 2, 1});
  const Partition back = partition_from_json(Json::parse(to_json(P).dump()), g);
  EXPECT_EQ(back.labels(), P.labels());
  EXPECT_THROW(partition_from_json(Json::parse(R"({"cells":[[0,1],[1,2,3,4]]})"), g), InvalidParameter);
}

TEST(VertexMapJson, RoundTrip) {
  const GroupSpec g = GroupSpec::cyclic(3);
  VertexMap fs;
  for (VertexMask e = 1; e < 4; ++e) fs.emplace(e, fn(g, awkward_values(3)));
  const Json j = to_json(fs, 2);
  EXPECT_TRUE(j.at("functions").contains("11"));
  int d = 0;
  const VertexMap back = vertex_map_from_json(Json::parse(j.dump()), d);
  EXPECT_EQ(d, 2);
  ASSERT_EQ(back.size(), 3u);
  for (const auto& [e, f] : fs) EXPECT_EQ(back.at(e).vector(), f.vector());
}

TEST(AdDecompositionJson, RoundTripWithConjugatePairs) {
  std::vector<double> v = awkward_values(5);
  v[3] = 1e-300;  // the transform must stay finite
  const AdDecomposition D = character_decomposition(fn(GroupSpec::cyclic(5), v));
  const AdDecomposition back = ad_decomposition_from_json(Json::parse(to_json(D).dump()));
  ASSERT_EQ(back.terms.size(), D.terms.size());
  EXPECT_EQ(back.d, D.d);
  for (std::size_t i = 0; i < D.terms.size(); ++i) {
    EXPECT_EQ(back.terms[i].conjugate_pair, D.terms[i].conjugate_pair);
    for (const auto& [e, f] : D.terms[i].re) EXPECT_EQ(back.terms[i].re.at(e).vector(), f.vector());
    for (const auto& [e, f] : D.terms[i].im) EXPECT_EQ(back.terms[i].im.at(e).vector(), f.vector());
  }
  EXPECT_EQ(materialize(back).vector(), materialize(D).vector());
}

TEST(DecomposableJson, RoundTrip) {
  const GroupSpec g = GroupSpec::cyclic(4);
  DecomposableFunction F{1, {{{0, fn(g, awkward_values(4))}, {1, GroupFunction::constant(g, 0.5)}}}};
  const DecomposableFunction back = decomposable_from_json(Json::parse(to_json(F).dump()));
  EXPECT_EQ(back.d, 1);
  EXPECT_EQ(materialize(back).vector(), materialize(F).vector());
}

TEST(Files, ReadWriteAndErrors) {
  const auto path = std::filesystem::temp_directory_path() / "gowers_serialization_test.json";
  write_text_file(path.string(), to_json(fn(GroupSpec::cyclic(2), {1, 2})).dump());
  EXPECT_EQ(group_function_from_json(read_json_file(path.string())).vector(), (std::vector<double>{1, 2}));
  write_text_file(path.string(), "{not json");
  EXPECT_THROW(read_json_file(path.string()), InvalidParameter);
  std::filesystem::remove(path);
  EXPECT_THROW(read_json_file(path.string()), InvalidParameter);
}

}  // namespace
