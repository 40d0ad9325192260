#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "roomcraft/scene.hpp"

namespace roomcraft {

struct PromptTemplate {
    std::string name;  // room_type_classification | furniture_enumeration |
                       // spatial_relationship_analysis | constraint_formalization
    std::string body;  // contains exactly one {input} placeholder
};

// The four templates, in the fixed extraction order.
const std::vector<PromptTemplate>& default_templates();

// Substitute the {input} placeholder. Throws SchemaViolation when the body
// does not contain exactly one placeholder.
std::string render_template(const PromptTemplate& tmpl, const std::string& input);

// Turns one rendered prompt into a JSON fragment (see default_templates for
// the per-template shapes). Implementations must either be safe for
// concurrent calls or report exclusive() = true.
class ExtractionProvider {
  public:
    virtual ~ExtractionProvider() = default;
    virtual std::string name() const = 0;
    virtual bool exclusive() const { return false; }
    virtual std::string complete(const PromptTemplate& tmpl, const std::string& rendered) = 0;

    std::mutex& serialization_mutex() const { return mutex_; }

  private:
    mutable std::mutex mutex_;
};

// Deterministic keyword-rule provider used for tests and offline runs.
class MockProvider : public ExtractionProvider {
  public:
    std::string name() const override { return "mock"; }
    std::string complete(const PromptTemplate& tmpl, const std::string& rendered) override;
};

// Minimal client for an OpenAI-compatible chat-completions endpoint,
// configured by ROOMCRAFT_LLM_URL / ROOMCRAFT_LLM_KEY / ROOMCRAFT_LLM_MODEL.
class HttpProvider : public ExtractionProvider {
  public:
    HttpProvider(std::string base_url, std::string api_key, std::string model);
    std::string name() const override { return "http"; }
    std::string complete(const PromptTemplate& tmpl, const std::string& rendered) override;

  private:
    std::string base_url_;
    std::string api_key_;
    std::string model_;
};

// HttpProvider when ROOMCRAFT_LLM_URL is set, MockProvider otherwise.
std::unique_ptr<ExtractionProvider> provider_from_env();

// Run the four templates in order, monotonically merge the responses
// (later templates may add, never delete; conflicts dropped with a warning)
// and validate the result. Throws ExtractionFailed / ProviderUnavailable.
ParseResult extract(ExtractionProvider& provider, const std::string& input);

}  // namespace roomcraft
