#pragma once

#include <stdexcept>
#include <string>

namespace roomcraft {

// Base error; `code` names the error class for machine-readable diagnostics
// and maps onto CLI exit codes (see tools/main.cpp).
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(detail) {}
    const std::string& code() const { return code_; }
    const std::string& detail() const { return detail_; }

  private:
    std::string code_;
    std::string detail_;
};

struct MalformedDocument : Error {
    explicit MalformedDocument(const std::string& d) : Error("MalformedDocument", d) {}
};
struct SchemaViolation : Error {
    explicit SchemaViolation(const std::string& d) : Error("SchemaViolation", d) {}
};
struct DanglingReference : Error {
    explicit DanglingReference(const std::string& id)
        : Error("DanglingReference", id), id(id) {}
    std::string id;
};
struct InvalidDimensions : Error {
    explicit InvalidDimensions(const std::string& d) : Error("InvalidDimensions", d) {}
};
struct CyclicSupport : Error {
    explicit CyclicSupport(const std::string& d) : Error("CyclicSupport", d) {}
};
struct UnknownItem : Error {
    explicit UnknownItem(const std::string& id) : Error("UnknownItem", id) {}
};
struct NoCandidateSurface : Error {
    explicit NoCandidateSurface(const std::string& d) : Error("NoCandidateSurface", d) {}
};
struct UnmappableRelation : Error {
    explicit UnmappableRelation(const std::string& d) : Error("UnmappableRelation", d) {}
};
struct UnplacedReference : Error {
    explicit UnplacedReference(const std::string& id) : Error("UnplacedReference", id) {}
};
struct ActionInfeasible : Error {
    explicit ActionInfeasible(const std::string& d) : Error("ActionInfeasible", d) {}
};
struct UnknownTarget : Error {
    explicit UnknownTarget(const std::string& id) : Error("UnknownTarget", id) {}
};
struct NoRepairFound : Error {
    explicit NoRepairFound(const std::string& d) : Error("NoRepairFound", d) {}
};
struct ItemUnplaceable : Error {
    ItemUnplaceable(const std::string& id, int attempts)
        : Error("ItemUnplaceable",
                "item '" + id + "' could not be placed after " + std::to_string(attempts) +
                    " attempts"),
          id(id),
          attempts(attempts) {}
    std::string id;
    int attempts;
};
struct EmptySet : Error {
    explicit EmptySet(const std::string& d) : Error("EmptySet", d) {}
};
struct ExtractionFailed : Error {
    explicit ExtractionFailed(const std::string& d) : Error("ExtractionFailed", d) {}
};
struct ProviderUnavailable : Error {
    explicit ProviderUnavailable(const std::string& d) : Error("ProviderUnavailable", d) {}
};

}  // namespace roomcraft
