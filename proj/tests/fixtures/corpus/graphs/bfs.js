// Breadth-first search on an adjacency list.
var graph = {
  a: ["b", "c"],
  b: ["d"],
  c: ["d", "e"],
  d: ["f"],
  e: ["f"],
  f: []
};

function bfs(start, goal) {
  var queue = [[start]];
  var seen = {};
  seen[start] = true;
  while (queue.length > 0) {
    var path = queue.shift();
    var node = path[path.length - 1];
    if (node === goal) {
      return path;
    }
    var next = graph[node] || [];
    for (var i = 0; i < next.length; i++) {
      if (!seen[next[i]]) {
        seen[next[i]] = true;
        queue.push(path.concat([next[i]]));
      }
    }
  }
  return null;
}

var route = bfs("a", "f");
var hops = route ? route.length - 1 : -1;
