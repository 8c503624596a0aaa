int f(int n) {
  int s;
  int i = 0;
  while (i < n) {
    s = i;
    i = i + 1;
  }
  return s; // <- uninit-read
}
