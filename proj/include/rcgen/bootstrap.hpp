#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rcgen/annotation.hpp"
#include "rcgen/ingest.hpp"
#include "rcgen/templates.hpp"

namespace rcgen {

struct BootstrapConfig {
    double lambda = 0.5;             // minimum IoU; pairs below it are filtered
    int max_objects_per_image = 15;
    double min_object_area = 2000.0;  // px^2, strictly greater-than
    int max_inflight_requests = 4;
    int retry_limit = 2;              // extra attempts after the first failure
    double request_timeout_s = 30.0;
    double abort_failure_rate = 0.5;  // abort the run past this failure fraction
};

// Text-completion interface to the vision-language model serving describe /
// re-ground requests. Implementations must be safe to use from the single
// worker they are handed to; run_bootstrap creates one instance per worker so
// caching clients see both calls for an object.
class ModelClient {
public:
    virtual ~ModelClient() = default;
    // Raw model text describing the object at coord_text.
    virtual std::string describe(const ImageRecord& image, const std::string& coord_text) = 0;
    // Raw model text locating the description (expected to contain a box).
    virtual std::string ground(const ImageRecord& image, const std::string& description) = 0;
};

using ClientFactory = std::function<std::unique_ptr<ModelClient>()>;

// Prompt wording for the two calls: the first ground_caption / grounding
// template, so the bootstrap exercises the same instruction surface the
// generated corpus trains.
std::string describe_prompt(const TemplateBank& bank, const std::string& coord_text);
std::string ground_prompt(const TemplateBank& bank, const std::string& description);

// Base for clients that speak (image, prompt) -> text.
class PromptModelClient : public ModelClient {
public:
    explicit PromptModelClient(const TemplateBank& bank) : bank_(&bank) {}
    std::string describe(const ImageRecord& image, const std::string& coord_text) final;
    std::string ground(const ImageRecord& image, const std::string& description) final;

protected:
    virtual std::string complete(const ImageRecord& image, const std::string& prompt) = 0;

private:
    const TemplateBank* bank_;
};

// Scripted client for tests and dry runs: maps (image_id, prompt) to a canned
// response. Entries with fail=true throw ClientError, exercising retry paths.
class TranscriptClient final : public PromptModelClient {
public:
    struct Entry {
        std::string response;
        bool fail = false;
    };
    using Script = std::unordered_map<std::string, Entry>;  // key: image_id "\x1f" prompt

    TranscriptClient(const TemplateBank& bank, std::shared_ptr<const Script> script)
        : PromptModelClient(bank), script_(std::move(script)) {}

    static std::string key(const std::string& image_id, const std::string& prompt);
    // NDJSON records: {"image_id", "prompt", "response"[, "fail"]}
    static std::shared_ptr<const Script> load(std::istream& in);

protected:
    std::string complete(const ImageRecord& image, const std::string& prompt) override;

private:
    std::shared_ptr<const Script> script_;
};

// HTTP client: POST {"image_uri", "prompt"} to the endpoint, expects
// {"text": ...}. The bearer token comes from the environment, never from
// configuration files.
class HttpModelClient final : public PromptModelClient {
public:
    HttpModelClient(const TemplateBank& bank, const std::string& endpoint_url,
                    double timeout_s = 30.0, std::string auth_token = {});
    ~HttpModelClient() override;

protected:
    std::string complete(const ImageRecord& image, const std::string& prompt) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct BootstrapReport {
    int64_t generated = 0;      // = retained + filtered + no_box_parsed
    int64_t retained = 0;
    int64_t filtered = 0;       // low IoU or empty description
    int64_t no_box_parsed = 0;  // grounding output contained no usable box
    int64_t request_failures = 0;
    double mean_iou_retained = 0.0;
    bool operator==(const BootstrapReport&) const = default;
};

struct BootstrapOutput {
    std::vector<ReferringExpression> expressions;  // sorted by (image_id, object_id)
    BootstrapReport report;
    bool aborted = false;
};

// One describe call with retries; the returned description is trimmed and has
// coordinate tuples stripped (it may come back empty). Throws ClientError
// once retries are exhausted.
std::string describe_object(ModelClient& client, const ImageRecord& image, const ObjectAnn& obj,
                            int retry_limit);

// One grounding call with retries; absent when no box parses from the output.
std::optional<NormBox> ground_description(ModelClient& client, const ImageRecord& image,
                                          const std::string& description, int retry_limit);

// Retained iff a prediction exists and iou(gt, predicted) >= lambda; pairs
// exactly at the threshold are kept.
bool self_consistent_filter(const NormBox& gt, const std::optional<NormBox>& predicted,
                            double lambda);

// Runs describe -> strip -> ground -> filter over every candidate object.
// Emits one record per candidate that completed both calls; failed requests
// skip the object and count toward request_failures. Output order and content
// are independent of max_inflight_requests.
BootstrapOutput run_bootstrap(const ClientFactory& make_client, const BootstrapFilterResult& input,
                              const BootstrapConfig& config);

// Recomputes retained flags for a different lambda without re-querying.
BootstrapReport refilter(std::vector<ReferringExpression>& records, double lambda);

// Report buckets recomputed from stored records (request failures are not
// recoverable from records).
BootstrapReport report_from_records(std::span<const ReferringExpression> records, double lambda);

// Newline-delimited store of ReferringExpression records; exact round-trip.
void write_expressions(std::ostream& out, std::span<const ReferringExpression> records);
std::vector<ReferringExpression> read_expressions(std::istream& in);

}  // namespace rcgen
