#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "minkgauss/catalog.hpp"
#include "minkgauss/error.hpp"
#include "minkgauss/surface.hpp"

namespace mg = minkgauss;
namespace fs = std::filesystem;

namespace {

const fs::path kCatalog = MINKGAUSS_CATALOG_DIR;

constexpr const char* kGood = R"(# comment line
name = graph
x0 = s + t
x1 = s - t   # trailing comment
x2 = q*sin(s)
x3 = q*cos(t)
domain = -0.5 0.5 -0.25 0.75
param q = 0.2
)";

// Same immersion values and derivatives on a small grid.
void expect_same_immersion(const mg::SurfaceDef& a, const mg::SurfaceDef& b) {
  EXPECT_EQ(a.domain, b.domain);
  for (double s : {-0.8, -0.3, 0.0, 0.45, 0.8}) {
    for (double t : {-0.8, -0.1, 0.2, 0.8}) {
      const mg::JetVec4 ja = mg::immersion_jets(a, {s, t});
      const mg::JetVec4 jb = mg::immersion_jets(b, {s, t});
      for (int i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < ja[i].size(); ++k) {
          EXPECT_NEAR(static_cast<double>(ja[i].data()[k]),
                      static_cast<double>(jb[i].data()[k]), 1e-13)
              << a.name << " x" << i << " at (" << s << ", " << t << ")";
        }
      }
    }
  }
}

}  // namespace

TEST(SurfaceFile, ParsesAllKeys) {
  const mg::SurfaceDef d = mg::parse_surface(kGood);
  EXPECT_EQ(d.name, "graph");
  EXPECT_EQ(d.domain, (mg::Domain{-0.5, 0.5, -0.25, 0.75}));
  EXPECT_EQ(d.params.at("q"), 0.2);
  EXPECT_EQ(d.components[1], mg::parse("s - t"));
}

TEST(SurfaceFile, FormatRoundTrip) {
  const mg::SurfaceDef d = mg::parse_surface(kGood);
  const mg::SurfaceDef again = mg::parse_surface(mg::format_surface(d));
  EXPECT_EQ(again.name, d.name);
  EXPECT_EQ(again.domain, d.domain);
  EXPECT_EQ(again.params, d.params);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(again.components[i], d.components[i]);
}

TEST(SurfaceFile, MissingComponent) {
  try {
    mg::parse_surface("name = x\nx0 = s\nx1 = t\nx2 = 0\ndomain = 0 1 0 1\n");
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::ValidationError);
    EXPECT_NE(std::string(e.what()).find("expected 4 components"), std::string::npos);
  }
}

TEST(SurfaceFile, EmptyDomain) {
  try {
    mg::parse_surface("name = x\nx0 = s\nx1 = t\nx2 = 0\nx3 = 0\ndomain = 1 1 0 1\n");
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::ValidationError);
    EXPECT_NE(std::string(e.what()).find("empty domain"), std::string::npos);
  }
}

TEST(SurfaceFile, ParseErrorLineAndColumn) {
  try {
    mg::parse_surface("name = x\nx0 = s +\n");
    FAIL();
  } catch (const mg::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
  }
  try {
    mg::parse_surface("name = x\n\n  colour = red\n");
    FAIL();
  } catch (const mg::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(SurfaceFile, UnboundParameter) {
  try {
    mg::parse_surface("name = x\nx0 = a*s\nx1 = t\nx2 = 0\nx3 = 0\ndomain = 0 1 0 1\n");
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::ValidationError);
  }
}

TEST(SurfaceFile, MissingFileIsIoError) {
  try {
    mg::load_surface("definitely-missing.surf");
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::IoError);
    EXPECT_NE(std::string(e.what()).find("definitely-missing.surf"), std::string::npos);
  }
}

TEST(CatalogFiles, MatchGenerators) {
  for (const char* name : {"degenerate-null", "null-translation", "hyperplane-minimal", "plane"}) {
    const mg::SurfaceDef file = mg::load_surface(kCatalog / (std::string(name) + ".surf"));
    EXPECT_EQ(file.name, name);
    expect_same_immersion(file, mg::catalog_surface(name));
  }
}
