int f() {
  int x;
  int y = x + 1; // <- uninit-read
  return y;
}
