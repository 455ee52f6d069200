// Caesar cipher over ASCII letters.
function shiftChar(c, k) {
  var code = c.charCodeAt(0);
  if (code >= 65 && code <= 90) {
    return String.fromCharCode(((code - 65 + k) % 26 + 26) % 26 + 65);
  }
  if (code >= 97 && code <= 122) {
    return String.fromCharCode(((code - 97 + k) % 26 + 26) % 26 + 97);
  }
  return c;
}

function caesar(text, k) {
  var out = "";
  for (var i = 0; i < text.length; i++) {
    out += shiftChar(text[i], k);
  }
  return out;
}

var config = {
  shift: 3,
  label: "rot",
  encode: function (s) {
    return caesar(s, this.shift);
  }
};
var secret = config.encode("Attack at dawn");
var plain = caesar(secret, -config.shift);
