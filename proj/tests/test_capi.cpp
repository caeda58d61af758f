#include <gtest/gtest.h>

#include <convcode/convcode.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Code {
  cc_code* ptr = nullptr;
  ~Code() { cc_code_free(ptr); }
};

struct Text {
  char* ptr = nullptr;
  ~Text() { cc_string_free(ptr); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("convcode-capi-" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CApi, ConstructAndInspect) {
  const cc_params p{2, 5, 4, 2};
  cc_construct_options opts{"hankel1", 0, 0, nullptr};
  Code c;
  ASSERT_EQ(cc_construct(&p, &opts, &c.ptr), CC_OK) << cc_last_error();
  cc_code_info info{};
  ASSERT_EQ(cc_code_get_info(c.ptr, &info), CC_OK);
  EXPECT_STREQ(info.scheme, "hankel1");
  EXPECT_STREQ(info.field, "GF(11)");
  EXPECT_STREQ(info.field_order, "11");
  EXPECT_EQ(info.reads, 4u);
  EXPECT_EQ(std::strlen(info.hash), 64u);

  Text manifest;
  ASSERT_EQ(cc_manifest_text(c.ptr, &manifest.ptr), CC_OK);
  Code parsed;
  ASSERT_EQ(cc_manifest_parse(manifest.ptr, std::strlen(manifest.ptr), &parsed.ptr), CC_OK);
  cc_code_info again{};
  cc_code_get_info(parsed.ptr, &again);
  EXPECT_STREQ(again.hash, info.hash);
}

TEST_F(CApi, ErrorsCarryMessages) {
  const cc_params p{2, 4, 3, 2};
  cc_construct_options opts{"hankel1", 0, 0, nullptr};
  Code c;
  EXPECT_EQ(cc_construct(&p, &opts, &c.ptr), CC_E_PRECONDITION);
  EXPECT_EQ(c.ptr, nullptr);
  EXPECT_NE(std::string(cc_last_error()).find("rF <= floor(rI/lambda)"), std::string::npos);

  cc_construct_options small{"hankel2", 0, 0, "11"};
  EXPECT_EQ(cc_construct(&p, &small, &c.ptr), CC_E_SIZE_EXCEEDS_FIELD);
  cc_construct_options not_power{"hankel2", 0, 0, "12"};
  EXPECT_EQ(cc_construct(&p, &not_power, &c.ptr), CC_E_INVALID_PARAMS);
  cc_construct_options unknown{"raid", 0, 0, nullptr};
  EXPECT_EQ(cc_construct(&p, &unknown, &c.ptr), CC_E_INVALID_PARAMS);
  EXPECT_EQ(cc_construct(nullptr, nullptr, &c.ptr), CC_E_ARGUMENT);

  Code loaded;
  EXPECT_EQ(cc_manifest_load(path("absent.json").c_str(), &loaded.ptr), CC_E_IO);
  EXPECT_EQ(cc_manifest_parse("{}", 2, &loaded.ptr), CC_E_FORMAT);

  Code g;
  const cc_params gp{2, 2, 1, 1};
  cc_construct_options general{"general", 0, 0, nullptr};
  ASSERT_EQ(cc_construct(&gp, &general, &g.ptr), CC_OK);
  Code r;
  EXPECT_EQ(cc_restrict(g.ptr, 2, 1, &r.ptr), CC_E_NOT_RESTRICTABLE);
  EXPECT_STREQ(cc_status_name(CC_E_NOT_RESTRICTABLE), "not restrictable");
}

TEST_F(CApi, Bounds) {
  const cc_params p{2, 10, 4, 4};
  cc_bounds b{};
  ASSERT_EQ(cc_bounds_compute(&p, &b), CC_OK);
  EXPECT_EQ(b.access_lower_bound, 12u);
  EXPECT_EQ(b.baseline_access, 24u);
  EXPECT_EQ(b.read_lower_bound_per_stripe, 4u);
  EXPECT_EQ(b.max_unchanged, 20u);
  const cc_params bad{1, 10, 4, 4};
  EXPECT_EQ(cc_bounds_compute(&bad, &b), CC_E_INVALID_PARAMS);
}

TEST_F(CApi, EncodeConvertDecode) {
  const cc_params p{2, 4, 3, 2};
  Code c;
  ASSERT_EQ(cc_construct(&p, nullptr, &c.ptr), CC_OK);
  Text sel;
  ASSERT_EQ(cc_code_selection(c.ptr, &sel.ptr), CC_OK);
  EXPECT_NE(std::string(sel.ptr).find("hankel2: selected"), std::string::npos);

  ASSERT_EQ(cc_encode_random(c.ptr, 5, 42, path("enc").c_str()), CC_OK) << cc_last_error();
  Text report;
  ASSERT_EQ(cc_convert_store(c.ptr, path("enc").c_str(), path("final").c_str(), 0, &report.ptr), CC_OK)
      << cc_last_error();
  EXPECT_STREQ(report.ptr,
               "{\"accessOptimal\":true,\"baselineAccess\":10,\"lowerBound\":6,\"reads\":4,"
               "\"readsPerStripe\":[2,2],\"totalAccess\":6,\"writes\":2}");
  Text base;
  ASSERT_EQ(cc_convert_store(c.ptr, path("enc").c_str(), path("base").c_str(), 1, &base.ptr), CC_OK);
  EXPECT_NE(std::string(base.ptr).find("\"totalAccess\":10"), std::string::npos);
  for (int j = 0; j < 10; ++j) {
    const std::string name = "block-" + std::to_string(j) + ".bin";
    EXPECT_EQ(slurp(dir_ / "final" / name), slurp(dir_ / "base" / name));
  }

  const size_t erase[] = {0, 5};
  ASSERT_EQ(cc_decode_store(c.ptr, path("final").c_str(), erase, 2, path("out.bin").c_str()), CC_OK)
      << cc_last_error();
  EXPECT_EQ(slurp(dir_ / "out.bin"), slurp(dir_ / "enc" / "message.bin"));

  ASSERT_EQ(cc_encode_file(c.ptr, path("out.bin").c_str(), path("enc2").c_str()), CC_OK);
  EXPECT_EQ(slurp(dir_ / "enc2" / "initial-1" / "block-6.bin"), slurp(dir_ / "enc" / "initial-1" / "block-6.bin"));

  const size_t too_many[] = {0, 1, 2};
  EXPECT_EQ(cc_decode_store(c.ptr, path("final").c_str(), too_many, 3, path("x.bin").c_str()), CC_E_TOO_FEW_BLOCKS);

  fs::remove(dir_ / "enc" / "initial-0" / "block-4.bin");
  EXPECT_EQ(cc_convert_store(c.ptr, path("enc").c_str(), path("f2").c_str(), 0, nullptr), CC_E_MISSING_BLOCK);
}

TEST_F(CApi, Verify) {
  const cc_params p{2, 4, 3, 2};
  Code c;
  ASSERT_EQ(cc_construct(&p, nullptr, &c.ptr), CC_OK);
  cc_check_result results[16];
  size_t count = 0;
  ASSERT_EQ(cc_verify(c.ptr, CC_CHECK_ALL, results, 16, &count), CC_OK) << cc_last_error();
  EXPECT_EQ(count, 10u);
  for (size_t i = 0; i < count; ++i) EXPECT_EQ(results[i].verdict, CC_PASS) << results[i].name << " " << results[i].detail;

  ASSERT_EQ(cc_verify(c.ptr, CC_CHECK_PLAN, results, 16, &count), CC_OK);
  EXPECT_EQ(count, 3u);
  EXPECT_STREQ(results[0].name, "stability");
}
