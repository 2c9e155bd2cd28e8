#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <string>

#include <aniso/io/anim.hpp>
#include <aniso/io/image_file.hpp>
#include <aniso/io/png.hpp>
#include <aniso/io/records.hpp>
#include <aniso/io/svg.hpp>

#include "oracles.hpp"

using namespace aniso;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("aniso_io_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

}  // namespace

TEST(Anim, RoundTripIsExact) {
  const Image img = oracle::random_image(13, 9, 3);
  const auto bytes = io::encode_anim(img);
  ASSERT_EQ(bytes.size(), 16u + 8u * 13 * 9);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "ANIM");
  EXPECT_EQ(bytes[4], 13);
  EXPECT_EQ(bytes[8], 9);
  EXPECT_EQ(io::decode_anim(bytes), img);
}

TEST(Anim, RejectsCorruptData) {
  auto bytes = io::encode_anim(Image::filled(8, 8, 1.0));
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(io::decode_anim(bad_magic), IoError);
  bytes.pop_back();
  EXPECT_THROW(io::decode_anim(bytes), IoError);
  EXPECT_THROW(io::read_anim("/nonexistent/dir/x.anim"), IoError);
}

TEST(Png, SixteenBitRoundTrip) {
  TempDir dir;
  const Image img = Image::generate(20, 12, [](int x, int y) { return (x + 20 * y) / 239.0; });
  io::write_png(dir.file("a.png"), img, 0.0, 1.0);
  const Image back = io::read_png(dir.file("a.png"));
  ASSERT_TRUE(back.same_shape(img));
  for (std::size_t i = 0; i < img.size(); ++i)
    EXPECT_NEAR(back.samples()[i], img.samples()[i], 0.5 / 65535 + 1e-12);
}

TEST(Png, ErrorsCarryPath) {
  TempDir dir;
  io::write_text(dir.file("fake.png"), "not a png at all");
  try {
    io::read_png(dir.file("fake.png"));
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("fake.png"), std::string::npos);
  }
  EXPECT_THROW(io::read_png(dir.file("missing.png")), IoError);
}

TEST(ImageFile, DispatchesOnContent) {
  TempDir dir;
  const Image img = oracle::random_image(16, 16, 1);
  io::write_image(dir.file("x.anim"), img);
  EXPECT_EQ(io::read_image(dir.file("x.anim")), img);
  io::write_image(dir.file("x.png"), img);
  EXPECT_TRUE(io::read_image(dir.file("x.png")).same_shape(img));
}

TEST(Records, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 123456.789e-200, -0.0, 2.5}) {
    EXPECT_EQ(std::stod(io::format_double(v)), v);
  }
}

TEST(Records, ProfileCsvRoundTrip) {
  const AngularProfile p{{0.25, 0.25, 0.5}, true};
  const std::string csv = io::profile_csv(p);
  EXPECT_EQ(csv, "angle_deg,value\n0,0.25\n60,0.25\n120,0.5\n");
  const auto q = io::parse_profile_csv(csv);
  EXPECT_EQ(q.values, p.values);
  EXPECT_TRUE(q.normalized);
  EXPECT_THROW(io::parse_profile_csv("angle,value\n"), IoError);
}

TEST(Records, KeyValue) {
  io::KeyValueRecord r;
  r.set("kind", "gabor").set("seed", 7).set("mu", 60.0).set("kind", "isotropic");
  EXPECT_EQ(r.str(), "kind=isotropic\nseed=7\nmu=60\n");
  const auto parsed = io::KeyValueRecord::parse("# comment\na=1\n\nb = x\n");
  ASSERT_NE(parsed.find("a"), nullptr);
  EXPECT_EQ(*parsed.find("a"), "1");
  EXPECT_EQ(*parsed.find("b "), " x");
  EXPECT_EQ(parsed.find("c"), nullptr);
  EXPECT_THROW(io::KeyValueRecord::parse("novalue\n"), IoError);
}

TEST(Records, RegistrationRecordKeys) {
  RegistrationResult r;
  r.gamma = 137.25;
  const auto rec = io::registration_record(r);
  std::vector<std::string> keys;
  for (const auto& kv : rec.pairs()) keys.push_back(kv.first);
  EXPECT_EQ(keys, (std::vector<std::string>{"gamma_deg", "candidate1_deg", "candidate2_deg", "mse1",
                                            "mse2", "theta1_deg", "theta2_deg"}));
  EXPECT_EQ(*rec.find("gamma_deg"), "137.25");
}

TEST(Records, MetricCsv) {
  MetricReport m{"cake", "angular_distance_deg", 0.5, 0.25, 30, "sigma=50"};
  EXPECT_EQ(io::metric_csv({m}),
            "method,metric,mean,std,n,params\ncake,angular_distance_deg,0.5,0.25,30,sigma=50\n");
}

TEST(Svg, ContainsOneSeriesPerProfile) {
  const AngularProfile a{{0.1, 0.2, 0.7}, true};
  const AngularProfile b{{0.3, 0.3, 0.4}, true};
  const auto svg = io::profiles_svg({{"cake", a}, {"ridge", b}}, "test");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1))
    ++count;
  EXPECT_EQ(count, 2u);
  EXPECT_NE(svg.find(">cake<"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}
