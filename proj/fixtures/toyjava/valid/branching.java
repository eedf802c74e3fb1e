public class Branching {
  public static void main(String[] args) {
    int x = 4;
    int y = 0;
    if (x == 4) {
      y = x + 1;
    } else {
      y = x - 1;
    }
    System.out.println(y);
  }
}
