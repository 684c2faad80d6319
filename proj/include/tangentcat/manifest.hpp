#ifndef TANGENTCAT_MANIFEST_HPP
#define TANGENTCAT_MANIFEST_HPP

#include "tangentcat/linalg.hpp"
#include "tangentcat/polycat.hpp"
#include "tangentcat/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tangentcat {

// Run sizes shared by the CLI, the manifest [config] table and replay specs.
struct SuiteConfig {
    std::size_t max_rank = 3;
    std::size_t samples = 50;
    std::size_t bound = 4;
    std::size_t depth = 2;
    std::uint64_t seed = 0;
    unsigned long p = 5;
};

// A named morphism: a matrix (row-major, entries in the manifest domain) or
// polynomial components in x0..x{source-1}.
struct MorphismDef {
    std::optional<linalg::Matrix> matrix;
    std::optional<poly::PolyMorphism> poly;
    std::size_t line = 0;
};

// E = F^{base + fiber} over F^base with q the coordinate projection. Without
// explicit zeta/sigma/lambda the standard fiber structure is used.
struct ManifestBundle {
    std::string name;
    std::size_t base = 0;
    std::size_t fiber = 0;
    std::optional<std::string> zeta;
    std::optional<std::string> sigma;
    std::optional<std::string> lambda;
    std::size_t line = 0;
};

struct ManifestMorphism {
    std::string name;
    std::string source;
    std::string target;
    std::string f;
    std::string g;
    // none | bundle | additive | linear
    std::optional<std::string> expect;
    std::size_t line = 0;
};

struct Manifest {
    std::string path;
    std::string category;  // nbullet | poly
    Domain domain = Domain::natural();
    SuiteConfig config;
    // Keys of [config] present in the file.
    std::vector<std::string> config_keys;
    std::vector<std::string> suites;
    std::map<std::string, MorphismDef> morphisms;
    std::vector<ManifestBundle> bundles;
    std::vector<ManifestMorphism> pairs;
};

// Throws ManifestParse with "path:line:column: message" diagnostics.
Manifest load_manifest(const std::string& path);
Manifest parse_manifest(const std::string& text, const std::string& path = "<input>");

} // namespace tangentcat

#endif
