#include "tangentcat/bundles.hpp"

namespace tangentcat {

LinearDiffObject LinearDiffObject::standard(std::size_t v) {
    auto d = nbullet::diff_object(v);
    return {d.zeta.to_linear(), d.sigma.to_linear(), d.lambda.to_linear()};
}

const char* morphism_class_name(MorphismClass c) {
    switch (c) {
    case MorphismClass::None: return "none";
    case MorphismClass::Bundle: return "bundle";
    case MorphismClass::Additive: return "additive";
    case MorphismClass::Linear: return "linear+additive";
    }
    return "?";
}

std::string Classification::summary() const {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    return std::string("class: ") + morphism_class_name(cls) + ", bundle: " + yn(bundle) + ", additive: " + yn(additive) +
           ", linear: " + yn(linear);
}

} // namespace tangentcat
