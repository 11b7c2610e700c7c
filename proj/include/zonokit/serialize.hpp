#ifndef ZONOKIT_SERIALIZE_HPP
#define ZONOKIT_SERIALIZE_HPP

#include <string>

#include "zonokit/neural.hpp"
#include "zonokit/set.hpp"

namespace zonokit {

/// JSON text for a set: keys type, Gc, Gb, c, Ac, Ab, b in that order,
/// matrices as row-major arrays of arrays, absent blocks as [].
std::string set_to_json(const Set& s);

/**
 * @brief Parse a set document.
 *
 * Besides the native zono/conZono/hybZono form, constructor documents are
 * accepted and routed through the matching factory:
 *   {"type": "box", "lo": [...], "hi": [...]}
 *   {"type": "hrep", "H": [[...]], "f": [...]}
 *   {"type": "hrepUnion", "pieces": [{"H": ..., "f": ...}, ...]}
 *   {"type": "vrep", "V": [[...]], "M": [[...]]}
 * vrep lists one vertex per row; M is the vertex/piece incidence and
 * defaults to a single piece over all vertices.
 * @throws ArgumentError on malformed documents, naming the offending field
 */
Set set_from_json(const std::string& text);

/// @throws ArgumentError when the file cannot be read or parsed
Set load_set(const std::string& path);
void save_set(const Set& s, const std::string& path);

/// {"weights": [...], "biases": [...]} with one row-major matrix per layer.
std::string network_to_json(const ReluNetwork& net);

/// @throws ArgumentError on malformed documents
ReluNetwork network_from_json(const std::string& text);

ReluNetwork load_network(const std::string& path);
void save_network(const ReluNetwork& net, const std::string& path);

} // namespace zonokit

#endif
