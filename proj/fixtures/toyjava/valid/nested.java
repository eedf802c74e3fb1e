public class Nested {
  public static void main(String[] args) {
    int i = 3;
    while(0 < i) {
      int j = i;
      while(0 < j) {
        j = j - 1;
        if (j == 1) System.out.println(i + j);
      }
      i = i - 1;
    }
  }
}
