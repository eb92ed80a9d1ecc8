#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chancodes/transducer.hpp"

namespace chancodes {

/// Length up to which channels are checked for input preservation.
inline constexpr std::size_t kPreservationCheckLength = 6;

/// An error specification: an input-preserving transducer with a name and
/// the parameters it was built from.
class Channel {
 public:
  using Params = std::map<std::string, long>;

  /// Throws InvalidArgument if `verify` and the transducer is not
  /// input-preserving on short words.
  Channel(Transducer transducer, std::string name, Params params = {}, bool verify = true);

  const Transducer& transducer() const { return transducer_; }
  const std::string& name() const { return name_; }
  const Params& params() const { return params_; }
  const Alphabet& alphabet() const { return transducer_.alphabet(); }

  /// sigma | sigma^-1, the transducer whose image of a code is the set of
  /// words that can no longer be added.
  Transducer symmetric() const;

 private:
  Transducer transducer_;
  std::string name_;
  Params params_;
};

/// Input word with at most `k` substitutions.
Channel make_sub(long k, const Alphabet& alphabet = {});
/// At most `k` insertions or deletions.
Channel make_id(long k, const Alphabet& alphabet = {});
/// One deletion followed by one insertion at the end, or no error.
Channel make_del1_insend(const Alphabet& alphabet = {});
/// Inverse of make_del1_insend.
Channel make_ins1_delend(const Alphabet& alphabet = {});
/// Up to two deletions, insertions or adjacent bit swaps; binary only.
Channel make_bsid(const Alphabet& alphabet = {});
/// At most one deletion in each length-`b` segment; input length must be a
/// positive multiple of `b`.
Channel make_segd(long b, const Alphabet& alphabet = {});
/// Deletes a (possibly empty) proper prefix, then appends any suffix.
Channel make_overlap(const Alphabet& alphabet = {});

/// Registry names: sub:k, id:k, del1, ins1, bsid2, segd:b, ov.
Channel channel_by_name(std::string_view name, const Alphabet& alphabet = {});
std::vector<std::string> channel_names();

/// Union of the channels; a code is detecting for the result iff it is
/// detecting for each operand.
Channel combine(const std::vector<Channel>& channels);

/// Parses the @Transducer format.  An input-preservation failure is reported
/// through `warning` instead of an exception.
Channel parse_channel(std::string_view text, const std::optional<Alphabet>& alphabet = {},
                      std::string* warning = nullptr, std::string name = "file");
std::string serialize_channel(const Channel& channel);

}  // namespace chancodes
